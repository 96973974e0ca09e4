#include "bmwkz/params.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "bmwkz/jsonio.hpp"

namespace bmwkz {

namespace {
const cplx kIPi(0.0, std::numbers::pi);
}

DerivedScalars ParameterSet::derived(int cls) const {
  if (cls < 0 || cls >= (int)classes.size())
    throw std::out_of_range("parameter class index");
  const ClassParams& c = classes[cls];
  DerivedScalars d;
  d.q = std::exp(kIPi * kappa * c.k);
  d.l = std::exp(kIPi * kappa * c.alpha) / d.q;
  const cplx li = 1.0 / d.l, qi = 1.0 / d.q;
  d.tau = d.l * (li - d.q) * (li + qi) / (qi - d.q);
  d.nu = (d.l - li) / (1.0 - d.tau);
  return d;
}

double ParameterSet::genericity_margin() const {
  double margin = 1e300;
  for (int c = 0; c < (int)classes.size(); ++c) {
    const DerivedScalars d = derived(c);
    const cplx li = 1.0 / d.l, qi = 1.0 / d.q;
    for (cplx bad : {d.q, -d.q, qi, -qi})
      margin = std::min(margin, std::abs(li - bad));
    for (cplx bad : {cplx(1, 0), cplx(-1, 0)})
      margin = std::min(margin, std::abs(d.q - bad));
    margin = std::min(margin, std::abs(d.tau));
  }
  return margin;
}

double u64_to_unit(std::uint64_t x) {
  return (x >> 11) * 0x1.0p-53;  // 53-bit mantissa in [0,1)
}

ParameterSet sample_generic_parameters(std::uint64_t seed, int num_classes,
                                       cplx kappa) {
  if (num_classes < 1 || num_classes > 2)
    throw std::invalid_argument("num_classes must be 1 or 2");
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return u64_to_unit(rng()); };

  for (int attempt = 0; attempt < 10000; ++attempt) {
    ParameterSet p;
    p.kappa = kappa;
    p.classes.resize(num_classes);
    for (auto& c : p.classes) {
      c.k = cplx(0.5 + unit(), -0.25 + 0.5 * unit());
      c.alpha = cplx(0.5 + unit(), -0.25 + 0.5 * unit());
    }
    if (p.genericity_margin() > kGenericityMargin) return p;
  }
  throw std::runtime_error("generic parameter sampling failed to converge");
}

namespace {

cplx complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return cplx(j[0].get<double>(), j[1].get<double>());
  throw std::runtime_error("expected number or [re,im] pair");
}

}  // namespace

ParameterSet parameters_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ParameterSet p;
  if (j.contains("kappa")) p.kappa = complex_from_json(j.at("kappa"));
  if (!j.contains("classes") || !j.at("classes").is_array() ||
      j.at("classes").empty())
    throw std::runtime_error("parameter JSON requires a non-empty classes array");
  for (const auto& cj : j.at("classes")) {
    ClassParams c;
    c.k = complex_from_json(cj.at("k"));
    c.alpha = complex_from_json(cj.at("alpha"));
    p.classes.push_back(c);
  }
  return p;
}

std::string parameters_to_json(const ParameterSet& p) {
  JsonWriter w;
  w.begin_object();
  w.key("kappa").value(p.kappa);
  w.key("classes").begin_array();
  for (const auto& c : p.classes) {
    w.begin_object();
    w.key("k").value(c.k);
    w.key("alpha").value(c.alpha);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

}  // namespace bmwkz
