// Command-line entry point: computes braid monodromy and projector data,
// evaluates the sandwich scalars, builds the dihedral and general algebras,
// and runs the verification suite.  All reports are deterministic JSON
// (fixed key order, fixed float formatting); timing goes to stderr so that
// identical invocations produce byte-identical report bytes.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bmwkz/algebra_checks.hpp"
#include "bmwkz/coxeter.hpp"
#include "bmwkz/dihedral_algebra.hpp"
#include "bmwkz/general_algebra.hpp"
#include "bmwkz/jsonio.hpp"
#include "bmwkz/lkrep.hpp"
#include "bmwkz/monodromy.hpp"
#include "bmwkz/params.hpp"
#include "bmwkz/phi.hpp"
#include "bmwkz/presentations.hpp"

namespace {

using namespace bmwkz;

// Exit codes: 0 success, 1 failed verification/computation, 2 usage or I/O.
struct CliError {
  int code;
  std::string message;
};

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{2, "cannot open file: " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fputc('\n', stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw CliError{2, "cannot write file: " + out_path};
  out << text << '\n';
}

cplx parse_complex_flag(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return cplx(std::stod(text), 0.0);
    return cplx(std::stod(text.substr(0, comma)),
                std::stod(text.substr(comma + 1)));
  } catch (const std::exception&) {
    throw CliError{2, "cannot parse complex value: " + text};
  }
}

// Parameters come from an explicit file or from the seeded generic sampler.
ParameterSet load_parameters(const std::string& params_path,
                             std::uint64_t seed, int num_classes,
                             const std::string& kappa_flag) {
  ParameterSet p;
  if (!params_path.empty()) {
    try {
      p = parameters_from_json(read_file(params_path));
    } catch (const CliError&) {
      throw;
    } catch (const std::exception& e) {
      throw CliError{2, std::string("bad parameter file: ") + e.what()};
    }
  } else {
    p = sample_generic_parameters(seed, num_classes);
  }
  if (!kappa_flag.empty()) p.kappa = parse_complex_flag(kappa_flag);
  return p;
}

Word parse_word(const std::string& text) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    bool inverse = false;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      inverse = true;
      tok = tok.substr(0, tok.size() - 3);
    }
    if (tok.size() < 2) throw CliError{2, "cannot parse letter: " + tok};
    const char c = tok[0];
    int idx = 0;
    try {
      idx = std::stoi(tok.substr(1));
    } catch (const std::exception&) {
      throw CliError{2, "cannot parse letter: " + tok};
    }
    if (c == 'x' || c == 'X') {
      w.push_back(inverse ? xg_inv(idx) : xg(idx));
    } else if (c == 'e' || c == 'E') {
      if (inverse) throw CliError{2, "projector letters have no inverse"};
      w.push_back(eg(idx));
    } else {
      throw CliError{2, "cannot parse letter: " + tok};
    }
  }
  return w;
}

std::string word_display(const Word& w) {
  std::string s;
  for (const Letter& l : w) {
    if (!s.empty()) s += ' ';
    switch (l.kind) {
      case LetterKind::X: s += 'x' + std::to_string(l.idx); break;
      case LetterKind::XInv:
        s += 'x' + std::to_string(l.idx) + "^-1";
        break;
      case LetterKind::E: s += 'E' + std::to_string(l.idx); break;
    }
  }
  return s;
}

// NaN/Inf are not JSON numbers; render them as strings so a degenerate run
// still produces a parseable report.
void write_metric(JsonWriter& w, double v) {
  if (std::isfinite(v)) {
    w.value(v);
  } else {
    w.value(std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf"));
  }
}

void write_matrix(JsonWriter& w, const MatrixXcd& m) {
  w.begin_array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    w.begin_array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) w.value(m(r, c));
    w.end_array();
  }
  w.end_array();
}

void write_parameters(JsonWriter& w, const ParameterSet& p) {
  w.begin_object();
  w.key("kappa").value(p.kappa);
  w.key("genericity_margin");
  write_metric(w, p.genericity_margin());
  w.key("classes").begin_array();
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    const DerivedScalars s = p.derived((int)c);
    w.begin_object();
    w.key("k").value(p.classes[c].k);
    w.key("alpha").value(p.classes[c].alpha);
    w.key("q").value(s.q);
    w.key("l").value(s.l);
    w.key("tau").value(s.tau);
    w.key("nu").value(s.nu);
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

void write_residuals(JsonWriter& w, const RelationResidualReport& r) {
  w.begin_object();
  w.key("braid");
  write_metric(w, r.braid);
  w.key("transport");
  write_metric(w, r.transport);
  w.key("sandwich");
  write_metric(w, r.sandwich);
  w.key("projector");
  write_metric(w, r.projector);
  w.key("commute_xx");
  write_metric(w, r.commute_xx);
  w.key("commute_xe");
  write_metric(w, r.commute_xe);
  w.key("quadratic");
  write_metric(w, r.quadratic);
  w.key("absorb");
  write_metric(w, r.absorb);
  w.key("idempotent");
  write_metric(w, r.idempotent);
  w.key("max");
  write_metric(w, r.max());
  w.end_object();
}

CoxeterMatrix coxeter_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw CliError{2, std::string("bad graph file: ") + e.what()};
  }
  if (j.contains("dihedral"))
    return CoxeterMatrix::dihedral(j.at("dihedral").get<int>());
  if (!j.contains("rank") || !j.contains("m"))
    throw CliError{2, "graph JSON needs either {\"dihedral\": m} or "
                      "{\"rank\": n, \"m\": [[...]]}"};
  const int rank = j.at("rank").get<int>();
  std::vector<std::vector<int>> entries;
  for (const auto& row : j.at("m"))
    entries.push_back(row.get<std::vector<int>>());
  try {
    return CoxeterMatrix(rank, entries);
  } catch (const std::exception& e) {
    throw CliError{2, std::string("bad graph: ") + e.what()};
  }
}

MatrixXcd alternating_product(const MatrixXcd& a, const MatrixXcd& b,
                              int length) {
  MatrixXcd acc = MatrixXcd::Identity(a.rows(), a.cols());
  for (int i = 0; i < length; ++i) acc = acc * (i % 2 == 0 ? a : b);
  return acc;
}

// ----------------------------------------------------------------------------
// monodromy

int run_monodromy(int m, const std::string& params_path, std::uint64_t seed,
                  const std::string& kappa_flag, double ode_tol,
                  double approach, const std::string& out_path) {
  const double start = now_seconds();
  const Dihedral d(m);
  ParameterSet p =
      load_parameters(params_path, seed, d.num_classes(), kappa_flag);
  MonodromyOptions opt;
  opt.ode.tol = ode_tol;
  opt.approach = approach;
  const BraidMonodromy bm = braid_monodromy(d, p, opt);

  JsonWriter w;
  w.begin_object();
  w.key("m").value(m);
  w.key("parameters");
  write_parameters(w, p);
  w.key("generators").begin_array();
  for (int i = 0; i < 2; ++i) {
    const MatrixXcd& t = (i == 0) ? bm.t0 : bm.t1;
    const ProjectorFactors pf =
        extract_projector(t, p.derived(d.class_of(i)));
    w.begin_object();
    w.key("matrix");
    write_matrix(w, t);
    w.key("spectrum").begin_array();
    Eigen::ComplexEigenSolver<MatrixXcd> es(t, false);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
      w.value(es.eigenvalues()(k));
    w.end_array();
    w.key("projector");
    write_matrix(w, pf.e);
    w.key("projector_rank_ratio");
    write_metric(w, pf.rank_ratio);
    w.key("projector_trace_deviation");
    write_metric(w, pf.trace_deviation);
    w.end_object();
  }
  w.end_array();
  w.key("spectrum_residual");
  write_metric(w, bm.spectrum_residual);
  const double braid_res =
      (alternating_product(bm.t0, bm.t1, m) - alternating_product(bm.t1, bm.t0, m))
          .norm();
  w.key("braid_relation_residual");
  write_metric(w, braid_res);
  w.key("flatness_residual");
  write_metric(w, flatness_residual(d, p));
  w.end_object();
  emit(w.str(), out_path);
  std::fprintf(stderr, "monodromy m=%d: %.3fs\n", m, now_seconds() - start);
  return 0;
}

// ----------------------------------------------------------------------------
// phi

int run_phi(int m, const std::string& params_path, std::uint64_t seed,
            const std::string& kappa_flag, double ode_tol,
            const std::string& word_text, bool dump, int maxlen, int anchor,
            const std::string& out_path) {
  const double start = now_seconds();
  const Dihedral d(m);
  ParameterSet p =
      load_parameters(params_path, seed, d.num_classes(), kappa_flag);
  MonodromyOptions opt;
  opt.ode.tol = ode_tol;
  const PhiOracle oracle = dihedral_phi_oracle(d, p, opt);

  JsonWriter w;
  w.begin_object();
  w.key("m").value(m);
  if (dump) {
    if (maxlen < 0) maxlen = 2 * m;
    w.key("maxlen").value(maxlen);
    w.key("anchors").begin_object();
    for (int a = 0; a < 2; ++a) {
      w.key(std::to_string(a)).begin_object();
      w.key("").value(oracle.phi(a, {}));
      for (int len = 1; len <= maxlen; ++len) {
        for (int first = 0; first < 2; ++first) {
          Word word;
          for (int i = 0; i < len; ++i) word.push_back(xg((first + i) % 2));
          w.key(word_display(word)).value(oracle.phi(a, word));
        }
      }
      w.end_object();
    }
    w.end_object();
  } else {
    const Word word = parse_word(word_text);
    w.key("anchor").value(anchor);
    w.key("word").value(word_display(word));
    w.key("value").value(oracle.phi(anchor, word));
  }
  w.end_object();
  emit(w.str(), out_path);
  std::fprintf(stderr, "phi m=%d: %.3fs\n", m, now_seconds() - start);
  return 0;
}

// ----------------------------------------------------------------------------
// algebra

void write_dihedral_algebra_report(JsonWriter& w, int m,
                                   const ParameterSet& p, double ode_tol) {
  DihedralAlgebraOptions opt;
  opt.monodromy.ode.tol = ode_tol;
  DihedralAlgebra alg(m, p, opt);
  const int dim = alg.dimension();
  const auto& tensor = alg.structure_constants();

  DihedralAlgebraOptions hopt = opt;
  hopt.kind = AlgebraKind::Hecke;
  DihedralAlgebra hecke(m, p, hopt);

  w.begin_object();
  w.key("graph").value("dihedral " + std::to_string(m));
  w.key("parameters");
  write_parameters(w, p);
  w.key("dimension").value(dim);
  w.key("complete").value(true);
  w.key("trace_rank").value(rank_by_svd(gram_matrix(tensor)));
  w.key("hecke_dimension").value(hecke.dimension());
  w.key("relation_residuals");
  write_residuals(w, presentation_residuals(alg));
  w.key("basis").begin_array();
  for (const Word& b : alg.basis()) w.value(word_display(b));
  w.end_array();
  w.end_object();
}

void write_general_algebra_report(JsonWriter& w, const CoxeterMatrix& graph,
                                  const ParameterSet& p, double ode_tol) {
  GeneralAlgebraOptions opt;
  opt.monodromy.ode.tol = ode_tol;
  // Single relation queries may have to cross an expensive rewrite orbit
  // when the closure was capped, so give each request generous room.
  opt.max_steps = 200000000;
  GeneralAlgebra alg(graph, p, opt);
  const int dim = alg.dimension();
  const bool complete = alg.complete();

  GeneralAlgebraOptions hopt = opt;
  hopt.kind = AlgebraKind::Hecke;
  GeneralAlgebra hecke(graph, p, hopt);

  w.begin_object();
  {
    std::string desc = "rank " + std::to_string(graph.rank);
    w.key("graph").value(desc);
  }
  w.key("bond_orders").begin_array();
  for (int i = 0; i < graph.rank; ++i) {
    w.begin_array();
    for (int j = 0; j < graph.rank; ++j)
      w.value(graph.m[(std::size_t)i][(std::size_t)j]);
    w.end_array();
  }
  w.end_array();
  w.key("parameters");
  write_parameters(w, p);
  w.key("dimension").value(dim);
  w.key("complete").value(complete);
  if (complete) {
    w.key("trace_rank").value(rank_by_svd(gram_matrix(alg.structure_constants())));
  } else {
    w.key("trace_rank").value("unavailable: partial spanning set");
  }
  w.key("hecke_dimension").value(hecke.dimension());
  w.key("hecke_complete").value(hecke.complete());
  w.key("relation_residuals");
  write_residuals(w, presentation_residuals(alg));
  if (complete) {
    w.key("basis").begin_array();
    for (const Word& b : alg.basis()) w.value(word_display(b));
    w.end_array();
  }
  w.end_object();
}

int run_algebra(int dihedral_m, const std::string& coxeter_path,
                const std::string& params_path, std::uint64_t seed,
                const std::string& kappa_flag, double ode_tol,
                const std::string& out_path) {
  const double start = now_seconds();
  JsonWriter w;
  if (dihedral_m > 0) {
    const Dihedral d(dihedral_m);
    ParameterSet p =
        load_parameters(params_path, seed, d.num_classes(), kappa_flag);
    write_dihedral_algebra_report(w, dihedral_m, p, ode_tol);
  } else {
    const CoxeterMatrix graph = coxeter_from_json(read_file(coxeter_path));
    const std::vector<int> classes = reflection_classes(graph);
    const int num_classes =
        1 + *std::max_element(classes.begin(), classes.end());
    ParameterSet p =
        load_parameters(params_path, seed, num_classes, kappa_flag);
    write_general_algebra_report(w, graph, p, ode_tol);
  }
  emit(w.str(), out_path);
  std::fprintf(stderr, "algebra: %.3fs\n", now_seconds() - start);
  return 0;
}

// ----------------------------------------------------------------------------
// brauer

int run_brauer(int m, const std::string& params_path, std::uint64_t seed,
               const std::string& out_path) {
  const double start = now_seconds();
  const Dihedral d(m);
  ParameterSet p = load_parameters(params_path, seed, d.num_classes(), "");
  DihedralAlgebraOptions opt;
  opt.kind = AlgebraKind::Degenerate;
  DihedralAlgebra alg(m, p, opt);
  const BrauerDimensionReport rep = brauer_dimensions(alg);

  JsonWriter w;
  w.begin_object();
  w.key("m").value(m);
  w.key("parameters");
  write_parameters(w, p);
  w.key("dimension").value(rep.computed);
  w.key("deformed_count").value(rep.deformed_count);
  w.key("alternative_count").value(rep.alternative_count);
  w.key("matches_deformed").value(rep.matches_deformed);
  w.key("matches_alternative").value(rep.matches_alternative);
  w.key("relation_residuals");
  write_residuals(w, presentation_residuals(alg));
  w.end_object();
  emit(w.str(), out_path);
  std::fprintf(stderr, "brauer m=%d: %.3fs\n", m, now_seconds() - start);
  return 0;
}

// ----------------------------------------------------------------------------
// verify

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string note;
};

struct CheckList {
  std::vector<Check> items;

  // Residual check: pass when the computed value is finite and below the
  // threshold.  Exceptions fail the check instead of aborting the suite.
  void residual(const std::string& name, double threshold,
                const std::function<double()>& f) {
    Check c;
    c.name = name;
    c.threshold = threshold;
    try {
      c.value = f();
      c.pass = std::isfinite(c.value) && c.value < threshold;
    } catch (const std::exception& e) {
      c.pass = false;
      c.value = std::numeric_limits<double>::quiet_NaN();
      c.note = e.what();
    }
    items.push_back(std::move(c));
  }

  // Exact integer check: pass when the computed value equals the target.
  void equals(const std::string& name, int expected,
              const std::function<int()>& f) {
    Check c;
    c.name = name;
    c.threshold = expected;
    try {
      const int got = f();
      c.value = got;
      c.pass = (got == expected);
    } catch (const std::exception& e) {
      c.pass = false;
      c.value = std::numeric_limits<double>::quiet_NaN();
      c.note = e.what();
    }
    items.push_back(std::move(c));
  }

  void info(const std::string& name, double value, std::string note) {
    Check c;
    c.name = name;
    c.pass = true;
    c.value = value;
    c.threshold = 0.0;
    c.note = std::move(note);
    items.push_back(std::move(c));
  }
};

int run_verify(const std::vector<int>& m_list, const std::string& params_path,
               std::uint64_t seed, const std::string& kappa_flag,
               double relation_tol, double ode_tol,
               const std::string& out_path) {
  const double start = now_seconds();
  CheckList checks;

  // Integrator ground truth: a 1x1 logarithmic connection around the origin.
  checks.residual("abelian circle monodromy", 1e-10, [&] {
    const cplx kc(0.05, 0.02);
    const cplx got = abelian_circle_monodromy(kc, cplx(0, 0), 1.0);
    return std::abs(got - std::exp(cplx(0, 2.0 * M_PI) * kc));
  });

  for (int m : m_list) {
    const std::string tag = "m" + std::to_string(m) + " ";
    const Dihedral d(m);
    ParameterSet p = load_parameters(params_path, seed + (std::uint64_t)m,
                                     d.num_classes(), kappa_flag);

    MonodromyOptions mopt;
    mopt.ode.tol = ode_tol;

    std::optional<BraidMonodromy> bm;
    checks.residual(tag + "monodromy spectrum", 1e-6, [&] {
      bm = braid_monodromy(d, p, mopt);
      return bm->spectrum_residual;
    });

    checks.residual(tag + "cubic annihilation", 1e-8, [&] {
      if (!bm) throw std::runtime_error("monodromy unavailable");
      double worst = 0.0;
      for (int i = 0; i < 2; ++i) {
        const MatrixXcd& t = (i == 0) ? bm->t0 : bm->t1;
        const DerivedScalars s = p.derived(d.class_of(i));
        const MatrixXcd id = MatrixXcd::Identity(t.rows(), t.cols());
        const MatrixXcd r =
            (t - id / s.l) * (t - s.q * id) * (t + id / s.q);
        worst = std::max(worst, r.norm());
      }
      return worst;
    });

    checks.residual(tag + "projector rank", 1e-8, [&] {
      if (!bm) throw std::runtime_error("monodromy unavailable");
      double worst = 0.0;
      for (int i = 0; i < 2; ++i) {
        const MatrixXcd& t = (i == 0) ? bm->t0 : bm->t1;
        const DerivedScalars s = p.derived(d.class_of(i));
        const ProjectorFactors pf = extract_projector(t, s);
        // Rank one needs more than a small second singular value: when the
        // projector eigenvalue collides with a reflection eigenvalue
        // (l^{-1} = q) the skein combination degenerates to zero or to a
        // traceless nilpotent, and both slip past the ratio test.  The trace
        // of the raw combination divided by tau counts the multiplicity of
        // the projector eigenvalue, so demand that count to be one.
        const MatrixXcd id = MatrixXcd::Identity(t.rows(), t.cols());
        const cplx raw_trace =
            ((s.l / (1.0 / s.q - s.q)) * (t - s.q * id) * (t + id / s.q))
                .trace();
        const double multiplicity_error = std::abs(raw_trace / s.tau - 1.0);
        worst = std::max(
            {worst, pf.rank_ratio, pf.trace_deviation, multiplicity_error});
      }
      return worst;
    });

    checks.residual(tag + "braid relation", 1e-7, [&] {
      if (!bm) throw std::runtime_error("monodromy unavailable");
      return (alternating_product(bm->t0, bm->t1, m) -
              alternating_product(bm->t1, bm->t0, m))
          .norm();
    });

    checks.residual(tag + "flatness", 1e-12,
                    [&] { return flatness_residual(d, p); });

    checks.residual(tag + "line presentation", 1e-12, [&] {
      return degenerate_presentation_residuals(d, p).max_residual;
    });

    checks.equals(tag + "commutant dimension", (m % 2 == 1) ? 1 : 2, [&] {
      if (!bm) throw std::runtime_error("monodromy unavailable");
      return commutant_dimension({bm->t0, bm->t1});
    });

    const int expected_dim = (m % 2 == 1) ? (2 * m + m * m) : (2 * m + m * m / 2);
    std::optional<DihedralAlgebra> alg;
    checks.equals(tag + "deformed dimension", expected_dim, [&] {
      DihedralAlgebraOptions opt;
      opt.monodromy = mopt;
      alg.emplace(m, p, opt);
      return alg->dimension();
    });

    checks.equals(tag + "trace rank", expected_dim, [&] {
      if (!alg) throw std::runtime_error("algebra unavailable");
      return rank_by_svd(gram_matrix(alg->structure_constants()));
    });

    checks.residual(tag + "associativity", 1e-8, [&] {
      if (!alg) throw std::runtime_error("algebra unavailable");
      return associativity_residual(alg->structure_constants(), 100,
                                    (std::uint64_t)(900 + m));
    });

    checks.residual(tag + "representation residual", 1e-6, [&] {
      if (!alg) throw std::runtime_error("algebra unavailable");
      return representation_residual(alg->basis(), alg->structure_constants(),
                                     *alg->oracle());
    });

    checks.residual(tag + "defining relations", relation_tol, [&] {
      if (!alg) throw std::runtime_error("algebra unavailable");
      return presentation_residuals(*alg).max();
    });

    checks.equals(tag + "hecke dimension", 2 * m, [&] {
      DihedralAlgebraOptions opt;
      opt.monodromy = mopt;
      opt.kind = AlgebraKind::Hecke;
      DihedralAlgebra hecke(m, p, opt);
      return hecke.dimension();
    });

    if (m % 2 == 1) {
      checks.equals(tag + "degenerate dimension", m * m + 2 * m, [&] {
        DihedralAlgebraOptions opt;
        opt.kind = AlgebraKind::Degenerate;
        DihedralAlgebra deg(m, p, opt);
        return deg.dimension();
      });

      checks.residual(tag + "degeneration decade ratio in [7,13]", 1.0, [&] {
        const double d2 = degeneration_delta(d, p, cplx(1e-2, 0), mopt);
        const double d3 = degeneration_delta(d, p, cplx(1e-3, 0), mopt);
        const double d4 = degeneration_delta(d, p, cplx(1e-4, 0), mopt);
        const double ratio = d3 / d4;
        const bool ok = d2 > d3 && d3 > d4 && ratio >= 7.0 && ratio <= 13.0;
        // Report 0 on success so the residual framing (value < threshold)
        // carries the pass/fail; the ratio itself goes in the failure value.
        return ok ? 0.0 : ratio;
      });
    } else {
      // The two candidate dimension counts disagree at even order; report
      // which one the computed rank matches without asserting either.
      try {
        DihedralAlgebraOptions opt;
        opt.kind = AlgebraKind::Degenerate;
        DihedralAlgebra deg(m, p, opt);
        const BrauerDimensionReport rep = brauer_dimensions(deg);
        std::string note = "computed " + std::to_string(rep.computed) +
                           ", candidates " +
                           std::to_string(rep.deformed_count) + " / " +
                           std::to_string(rep.alternative_count) + ", matches ";
        if (rep.matches_deformed && rep.matches_alternative)
          note += "both";
        else if (rep.matches_deformed)
          note += std::to_string(rep.deformed_count);
        else if (rep.matches_alternative)
          note += std::to_string(rep.alternative_count);
        else
          note += "neither";
        checks.info(tag + "degenerate rank flags", rep.computed, note);
      } catch (const std::exception& e) {
        Check c;
        c.name = tag + "degenerate rank flags";
        c.pass = false;
        c.value = std::numeric_limits<double>::quiet_NaN();
        c.note = e.what();
        checks.items.push_back(std::move(c));
      }
    }

    if (m == 3) {
      checks.residual(tag + "sandwich scalar anchors", 1e-7, [&] {
        if (!alg || !alg->oracle())
          throw std::runtime_error("oracle unavailable");
        const DerivedScalars s = p.derived(0);
        const PhiOracle& o = *alg->oracle();
        return std::max(std::abs(o.phi(0, {eg(1)}) - cplx(1.0, 0.0)),
                        std::abs(o.phi(0, {xg(1)}) - s.l));
      });
      checks.residual(tag + "empty-word anchor", 1e-9, [&] {
        if (!alg || !alg->oracle())
          throw std::runtime_error("oracle unavailable");
        return std::abs(alg->oracle()->phi(0, {}) - p.derived(0).tau);
      });
    }
  }

  // Rank-2 general builds against their dihedral counterparts.  With an
  // explicit parameter file these only run when the class count fits the
  // graph; a seeded run always samples the right count.
  const auto classes_available = [&](int needed) {
    if (params_path.empty()) return true;
    const ParameterSet p = load_parameters(params_path, 0, needed, "");
    return (int)p.classes.size() == needed;
  };
  if (classes_available(1)) {
    ParameterSet p =
        load_parameters(params_path, seed + 1000, 1, kappa_flag);
    GeneralAlgebraOptions gopt;
    gopt.monodromy.ode.tol = ode_tol;
    checks.residual("general A2 matches dihedral order 3", 1e-8, [&] {
      GeneralAlgebra a2(CoxeterMatrix::simply_laced_a(2), p, gopt);
      DihedralAlgebra d3(3, p);
      const BasisMatchReport rep = dihedral_match(a2, d3);
      if (!rep.permutation)
        throw std::runtime_error("basis map is not a permutation");
      return rep.residual;
    });
  } else {
    checks.info("general A2 matches dihedral order 3", 0.0,
                "skipped: parameter file does not carry one class");
  }
  if (classes_available(2)) {
    ParameterSet p2 =
        load_parameters(params_path, seed + 1001, 2, kappa_flag);
    checks.equals("commuting product dimension", 9, [&] {
      GeneralAlgebraOptions gopt;
      gopt.monodromy.ode.tol = ode_tol;
      GeneralAlgebra prod(CoxeterMatrix::a1_x_a1(), p2, gopt);
      return prod.dimension();
    });
  } else {
    checks.info("commuting product dimension", 0.0,
                "skipped: parameter file does not carry two classes");
  }

  int failed = 0;
  std::string first_failure;
  for (const Check& c : checks.items) {
    if (!c.pass) {
      ++failed;
      if (first_failure.empty()) first_failure = c.name;
    }
  }

  JsonWriter w;
  w.begin_object();
  w.key("checks").begin_array();
  for (const Check& c : checks.items) {
    w.begin_object();
    w.key("name").value(c.name);
    w.key("pass").value(c.pass);
    w.key("value");
    write_metric(w, c.value);
    w.key("threshold");
    write_metric(w, c.threshold);
    if (!c.note.empty()) w.key("note").value(c.note);
    w.end_object();
  }
  w.end_array();
  w.key("total").value((int)checks.items.size());
  w.key("failed").value(failed);
  if (!first_failure.empty()) w.key("first_failure").value(first_failure);
  w.end_object();
  emit(w.str(), out_path);
  std::fprintf(stderr, "verify: %d/%zu checks passed, %.3fs\n",
               (int)checks.items.size() - failed, checks.items.size(),
               now_seconds() - start);
  return failed == 0 ? 0 : 1;
}

// ----------------------------------------------------------------------------
// report

int run_report(int dihedral_m, const std::string& coxeter_path,
               const std::string& params_path, std::uint64_t seed,
               const std::string& kappa_flag, double ode_tol,
               const std::string& out_path) {
  const double start = now_seconds();
  JsonWriter w;
  w.begin_object();
  if (dihedral_m > 0) {
    const Dihedral d(dihedral_m);
    ParameterSet p =
        load_parameters(params_path, seed, d.num_classes(), kappa_flag);
    MonodromyOptions mopt;
    mopt.ode.tol = ode_tol;
    const BraidMonodromy bm = braid_monodromy(d, p, mopt);
    w.key("monodromy").begin_object();
    w.key("spectrum_residual");
    write_metric(w, bm.spectrum_residual);
    w.key("braid_relation_residual");
    write_metric(
        w, (alternating_product(bm.t0, bm.t1, dihedral_m) -
            alternating_product(bm.t1, bm.t0, dihedral_m))
               .norm());
    w.key("flatness_residual");
    write_metric(w, flatness_residual(d, p));
    w.end_object();
    w.key("algebra");
    write_dihedral_algebra_report(w, dihedral_m, p, ode_tol);
    DihedralAlgebraOptions dopt;
    dopt.kind = AlgebraKind::Degenerate;
    DihedralAlgebra deg(dihedral_m, p, dopt);
    const BrauerDimensionReport rep = brauer_dimensions(deg);
    w.key("degenerate").begin_object();
    w.key("dimension").value(rep.computed);
    w.key("deformed_count").value(rep.deformed_count);
    w.key("alternative_count").value(rep.alternative_count);
    w.key("matches_deformed").value(rep.matches_deformed);
    w.key("matches_alternative").value(rep.matches_alternative);
    w.end_object();
  } else {
    const CoxeterMatrix graph = coxeter_from_json(read_file(coxeter_path));
    const std::vector<int> classes = reflection_classes(graph);
    const int num_classes =
        1 + *std::max_element(classes.begin(), classes.end());
    ParameterSet p =
        load_parameters(params_path, seed, num_classes, kappa_flag);
    w.key("algebra");
    write_general_algebra_report(w, graph, p, ode_tol);
  }
  w.end_object();
  emit(w.str(), out_path);
  std::fprintf(stderr, "report: %.3fs\n", now_seconds() - start);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monodromy-built deformed algebras on reflection arrangements"};
  app.require_subcommand(1);

  // Shared option storage; each subcommand binds the flags it supports.
  std::string params_path, kappa_flag, out_path, coxeter_path, word_text;
  std::uint64_t seed = 1;
  double ode_tol = 1e-12, relation_tol = 1e-7, approach = 1e-2;
  int m = 3, dihedral_m = 0, maxlen = -1, anchor = 0;
  bool dump = false;
  std::vector<int> m_list{3, 4, 5, 6};

  CLI::App* mono = app.add_subcommand("monodromy", "braid images and projectors");
  mono->add_option("--m", m, "dihedral order")->required();
  mono->add_option("--params", params_path, "parameter JSON file");
  mono->add_option("--seed", seed, "generic-parameter seed");
  mono->add_option("--kappa", kappa_flag, "override kappa (re[,im])");
  mono->add_option("--ode-tol", ode_tol, "integrator local error tolerance");
  mono->add_option("--eps", approach, "arc radius fraction");
  mono->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* phi = app.add_subcommand("phi", "sandwich scalar evaluation");
  phi->add_option("--m", m, "dihedral order")->required();
  phi->add_option("--params", params_path, "parameter JSON file");
  phi->add_option("--seed", seed, "generic-parameter seed");
  phi->add_option("--kappa", kappa_flag, "override kappa (re[,im])");
  phi->add_option("--ode-tol", ode_tol, "integrator local error tolerance");
  phi->add_option("--word", word_text, "word, e.g. \"x0 x1 E0\"");
  phi->add_flag("--dump", dump, "tabulate alternating words");
  phi->add_option("--maxlen", maxlen, "max word length for --dump");
  phi->add_option("--anchor", anchor, "projector index for the sandwich");
  phi->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* algebra = app.add_subcommand("algebra", "build the deformed algebra");
  algebra->add_option("--dihedral", dihedral_m, "dihedral order");
  algebra->add_option("--coxeter", coxeter_path, "graph JSON file");
  algebra->add_option("--params", params_path, "parameter JSON file");
  algebra->add_option("--seed", seed, "generic-parameter seed");
  algebra->add_option("--kappa", kappa_flag, "override kappa (re[,im])");
  algebra->add_option("--ode-tol", ode_tol, "integrator local error tolerance");
  algebra->add_option("--out", out_path, "output path (default stdout)");
  algebra->add_option("--report", out_path, "alias for --out");

  CLI::App* brauer = app.add_subcommand("brauer", "build the degenerate algebra");
  brauer->add_option("--dihedral", dihedral_m, "dihedral order")->required();
  brauer->add_option("--params", params_path, "parameter JSON file");
  brauer->add_option("--seed", seed, "generic-parameter seed");
  brauer->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--m", m_list, "dihedral orders to verify");
  verify->add_option("--params", params_path, "parameter JSON file");
  verify->add_option("--seed", seed, "generic-parameter seed");
  verify->add_option("--kappa", kappa_flag, "override kappa (re[,im])");
  verify->add_option("--tol", relation_tol, "relation residual tolerance");
  verify->add_option("--ode-tol", ode_tol, "integrator local error tolerance");
  verify->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* report = app.add_subcommand("report", "combined pipeline report");
  report->add_option("--dihedral", dihedral_m, "dihedral order");
  report->add_option("--coxeter", coxeter_path, "graph JSON file");
  report->add_option("--params", params_path, "parameter JSON file");
  report->add_option("--seed", seed, "generic-parameter seed");
  report->add_option("--kappa", kappa_flag, "override kappa (re[,im])");
  report->add_option("--ode-tol", ode_tol, "integrator local error tolerance");
  report->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (mono->parsed())
      return run_monodromy(m, params_path, seed, kappa_flag, ode_tol,
                           approach, out_path);
    if (phi->parsed()) {
      if (!dump && word_text.empty())
        throw CliError{2, "phi needs --word or --dump"};
      return run_phi(m, params_path, seed, kappa_flag, ode_tol, word_text,
                     dump, maxlen, anchor, out_path);
    }
    if (algebra->parsed() || report->parsed()) {
      if ((dihedral_m > 0) == !coxeter_path.empty())
        throw CliError{2, "need exactly one of --dihedral or --coxeter"};
      if (algebra->parsed())
        return run_algebra(dihedral_m, coxeter_path, params_path, seed,
                           kappa_flag, ode_tol, out_path);
      return run_report(dihedral_m, coxeter_path, params_path, seed,
                        kappa_flag, ode_tol, out_path);
    }
    if (brauer->parsed())
      return run_brauer(dihedral_m, params_path, seed, out_path);
    if (verify->parsed())
      return run_verify(m_list, params_path, seed, kappa_flag, relation_tol,
                        ode_tol, out_path);
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
