// Deterministic JSON emission.
//
// Reports must be byte-identical across runs with the same configuration,
// so keys are written in insertion order and every floating-point number is
// rendered with a fixed "%.17g" format.
#pragma once

#include <complex>
#include <string>
#include <vector>

namespace bmwkz {

class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(std::size_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v);
  JsonWriter& value(std::complex<double> v);  // [re, im]

  std::string str() const { return out_; }

 private:
  void comma();
  std::string out_;
  std::vector<bool> has_item_;  // per open container
  bool pending_key_ = false;
};

std::string format_double(double v);  // %.17g

}  // namespace bmwkz
