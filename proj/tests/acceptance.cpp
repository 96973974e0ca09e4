// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails.  Tolerances are fixed here and nowhere else; the seeds
// make every number reproducible.
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bmwkz/algebra_checks.hpp"
#include "bmwkz/coxeter.hpp"
#include "bmwkz/dihedral_algebra.hpp"
#include "bmwkz/general_algebra.hpp"
#include "bmwkz/lkrep.hpp"
#include "bmwkz/monodromy.hpp"
#include "bmwkz/params.hpp"
#include "bmwkz/phi.hpp"
#include "bmwkz/presentations.hpp"

namespace {

using namespace bmwkz;

int g_criterion = 0;
int g_failed = 0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Runs one criterion; f returns a detail string and throws (or calls fail())
// to fail.  Exactly one line per criterion goes to stdout.
struct Criterion {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  // Residual-style check: record the worst value, fail if it exceeds tol.
  void bound(double value, double tol, const std::string& what) {
    if (!(std::isfinite(value) && value < tol))
      fail(what + " = " + fmt(value) + " !< " + fmt(tol));
  }
  void equal(long value, long expected, const std::string& what) {
    if (value != expected)
      fail(what + " = " + std::to_string(value) +
           " != " + std::to_string(expected));
  }
};

void run_criterion(const std::string& name,
                   const std::function<void(Criterion&)>& body) {
  ++g_criterion;
  Criterion c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.fail(e.what());
  }
  if (!c.ok) ++g_failed;
  std::printf("[%2d/14] %-52s %s%s%s\n", g_criterion, name.c_str(),
              c.ok ? "PASS" : "FAIL", c.detail.empty() ? "" : "  -- ",
              c.detail.c_str());
  std::fflush(stdout);
}

MatrixXcd alternating_product(const MatrixXcd& a, const MatrixXcd& b,
                              int length) {
  MatrixXcd acc = MatrixXcd::Identity(a.rows(), a.cols());
  for (int i = 0; i < length; ++i) acc = acc * (i % 2 == 0 ? a : b);
  return acc;
}

struct Draw {
  ParameterSet p;
  BraidMonodromy bm;
};

}  // namespace

int main() {
  const std::vector<int> kMonodromyOrders{3, 4, 5, 6, 7};
  const std::vector<int> kAlgebraOrders{3, 4, 5, 6};
  const int kDraws = 5;

  // Shared monodromy data: five generic draws per dihedral order.
  std::map<int, std::vector<Draw>> draws;
  std::string monodromy_error;
  try {
    for (int m : kMonodromyOrders) {
      const Dihedral d(m);
      for (int i = 0; i < kDraws; ++i) {
        ParameterSet p = sample_generic_parameters(
            (std::uint64_t)(100 * m + i), d.num_classes());
        draws[m].push_back({p, braid_monodromy(d, p)});
      }
    }
  } catch (const std::exception& e) {
    monodromy_error = e.what();
  }
  const auto need_draws = [&](Criterion& c) {
    if (!monodromy_error.empty()) c.fail("monodromy: " + monodromy_error);
    return monodromy_error.empty();
  };

  // Shared algebra builds, one generic draw per order.
  std::map<int, std::optional<DihedralAlgebra>> algebras;
  std::map<int, ParameterSet> algebra_params;
  for (int m : kAlgebraOrders) {
    algebra_params[m] =
        sample_generic_parameters((std::uint64_t)(200 + m),
                                  Dihedral(m).num_classes());
    try {
      algebras[m].emplace(m, algebra_params[m]);
    } catch (const std::exception&) {
      algebras[m].reset();
    }
  }
  const auto need_algebra = [&](Criterion& c,
                                int m) -> DihedralAlgebra* {
    if (!algebras[m]) {
      c.fail("m=" + std::to_string(m) + " algebra construction failed");
      return nullptr;
    }
    return &*algebras[m];
  };

  run_criterion("cubic annihilation of the braid images", [&](Criterion& c) {
    if (!need_draws(c)) return;
    double worst = 0.0;
    for (int m : kMonodromyOrders) {
      const Dihedral d(m);
      for (const Draw& dr : draws[m]) {
        for (int i = 0; i < 2; ++i) {
          const MatrixXcd& t = (i == 0) ? dr.bm.t0 : dr.bm.t1;
          const DerivedScalars s = dr.p.derived(d.class_of(i));
          const MatrixXcd id = MatrixXcd::Identity(t.rows(), t.cols());
          worst = std::max(worst, ((t - id / s.l) * (t - s.q * id) *
                                   (t + id / s.q))
                                      .norm());
        }
      }
    }
    c.bound(worst, 1e-8, "cubic residual");
    c.detail = "max " + fmt(worst);
  });

  run_criterion("rank-one projector extraction", [&](Criterion& c) {
    if (!need_draws(c)) return;
    double worst = 0.0;
    for (int m : kMonodromyOrders) {
      const Dihedral d(m);
      for (const Draw& dr : draws[m]) {
        for (int i = 0; i < 2; ++i) {
          const ProjectorFactors pf =
              extract_projector((i == 0) ? dr.bm.t0 : dr.bm.t1,
                                dr.p.derived(d.class_of(i)));
          worst = std::max({worst, pf.rank_ratio, pf.trace_deviation});
        }
      }
    }
    c.bound(worst, 1e-8, "rank/trace deviation");
    c.detail = "max " + fmt(worst);
  });

  run_criterion("braid relation of the monodromy pair", [&](Criterion& c) {
    if (!need_draws(c)) return;
    double worst = 0.0;
    for (int m : kMonodromyOrders)
      for (const Draw& dr : draws[m])
        worst = std::max(worst, (alternating_product(dr.bm.t0, dr.bm.t1, m) -
                                 alternating_product(dr.bm.t1, dr.bm.t0, m))
                                    .norm());
    c.bound(worst, 1e-7, "braid residual");
    c.detail = "max " + fmt(worst);
  });

  run_criterion("sandwich scalar anchors at order 3", [&](Criterion& c) {
    const ParameterSet p = sample_generic_parameters(43, 1);
    const PhiOracle oracle = dihedral_phi_oracle(Dihedral(3), p);
    const DerivedScalars s = p.derived(0);
    c.bound(std::abs(oracle.phi(0, {eg(1)}) - cplx(1.0, 0.0)), 1e-7,
            "phi0(E1) - 1");
    c.bound(std::abs(oracle.phi(0, {xg(1)}) - s.l), 1e-7, "phi0(x1) - l");
    c.bound(std::abs(oracle.phi(0, {}) - s.tau), 1e-9, "phi0(empty) - tau");
  });

  run_criterion("deformed dimensions and trace ranks", [&](Criterion& c) {
    const std::map<int, int> expected{{3, 15}, {4, 16}, {5, 35}, {6, 30}};
    std::string got;
    for (int m : kAlgebraOrders) {
      DihedralAlgebra* alg = need_algebra(c, m);
      if (!alg) continue;
      c.equal(alg->dimension(), expected.at(m),
              "m=" + std::to_string(m) + " dimension");
      c.equal(rank_by_svd(gram_matrix(alg->structure_constants())),
              expected.at(m), "m=" + std::to_string(m) + " trace rank");
      if (!got.empty()) got += ",";
      got += std::to_string(alg->dimension());
    }
    if (c.ok) c.detail = "dims " + got;
  });

  run_criterion("quotient dimensions without projectors", [&](Criterion& c) {
    std::string got;
    for (int m : kAlgebraOrders) {
      DihedralAlgebraOptions opt;
      opt.kind = AlgebraKind::Hecke;
      DihedralAlgebra hecke(m, algebra_params[m], opt);
      c.equal(hecke.dimension(), 2 * m,
              "m=" + std::to_string(m) + " quotient dimension");
      if (!got.empty()) got += ",";
      got += std::to_string(hecke.dimension());
    }
    if (c.ok) c.detail = "dims " + got;
  });

  run_criterion("closure and associativity of the products", [&](Criterion& c) {
    double worst = 0.0;
    for (int m : kAlgebraOrders) {
      DihedralAlgebra* alg = need_algebra(c, m);
      if (!alg) continue;
      worst = std::max(worst,
                       associativity_residual(alg->structure_constants(), 100,
                                              (std::uint64_t)(700 + m)));
    }
    c.bound(worst, 1e-8, "associativity residual");
    c.detail = "max " + fmt(worst) + " over 100 triples each";
  });

  run_criterion("products agree with the scalar oracle", [&](Criterion& c) {
    double worst = 0.0;
    for (int m : {3, 4, 5}) {
      DihedralAlgebra* alg = need_algebra(c, m);
      if (!alg) continue;
      worst = std::max(
          worst, representation_residual(alg->basis(),
                                         alg->structure_constants(),
                                         *alg->oracle()));
    }
    c.bound(worst, 1e-6, "representation residual");
    c.detail = "max " + fmt(worst);
  });

  run_criterion("degeneration rate is first order", [&](Criterion& c) {
    for (int m : {3, 5}) {
      const Dihedral d(m);
      const ParameterSet p = algebra_params.count(m)
                                 ? algebra_params[m]
                                 : sample_generic_parameters(200 + m, 1);
      const double d2 = degeneration_delta(d, p, cplx(1e-2, 0));
      const double d3 = degeneration_delta(d, p, cplx(1e-3, 0));
      const double d4 = degeneration_delta(d, p, cplx(1e-4, 0));
      const double ratio = d3 / d4;
      if (!(d2 > d3 && d3 > d4))
        c.fail("m=" + std::to_string(m) + " deltas not decreasing");
      if (!(ratio >= 7.0 && ratio <= 13.0))
        c.fail("m=" + std::to_string(m) + " decade ratio " +
               fmt(ratio) + " outside [7,13]");
      if (!c.detail.empty()) c.detail += ", ";
      c.detail += "m=" + std::to_string(m) + " ratio " + fmt(ratio);
    }
  });

  run_criterion("flat connection and degenerate line relations",
                [&](Criterion& c) {
    double worst = 0.0;
    for (int m : kAlgebraOrders) {
      const Dihedral d(m);
      const ParameterSet& p = algebra_params[m];
      worst = std::max(worst, flatness_residual(d, p));
      worst = std::max(
          worst, degenerate_presentation_residuals(d, p).max_residual);
    }
    c.bound(worst, 1e-12, "flatness/line-relation residual");
    c.detail = "max " + fmt(worst);
  });

  run_criterion("degenerate dimensions and even-order flags",
                [&](Criterion& c) {
    for (int m : {3, 5}) {
      DihedralAlgebraOptions opt;
      opt.kind = AlgebraKind::Degenerate;
      DihedralAlgebra deg(m, sample_generic_parameters(500 + m, 1), opt);
      c.equal(deg.dimension(), m * m + 2 * m,
              "m=" + std::to_string(m) + " degenerate dimension");
    }
    // At even order the two closed-form counts disagree; report which one
    // the computed rank matches without asserting either.
    for (int m : {4, 6}) {
      DihedralAlgebraOptions opt;
      opt.kind = AlgebraKind::Degenerate;
      DihedralAlgebra deg(m, sample_generic_parameters(500 + m, 2), opt);
      const BrauerDimensionReport rep = brauer_dimensions(deg);
      if (!c.detail.empty()) c.detail += ", ";
      c.detail += "m=" + std::to_string(m) + " rank " +
                  std::to_string(rep.computed) + " matches " +
                  (rep.matches_deformed && rep.matches_alternative
                       ? "both counts"
                       : rep.matches_deformed
                             ? std::to_string(rep.deformed_count)
                             : rep.matches_alternative
                                   ? std::to_string(rep.alternative_count)
                                   : "neither count");
    }
  });

  run_criterion("general-graph relations and the dihedral match",
                [&](Criterion& c) {
    const ParameterSet p = sample_generic_parameters(601, 1);
    GeneralAlgebraOptions opt;
    // A single relation query on a capped chain build may cross a large
    // rewrite orbit, so each request gets generous room.
    opt.max_steps = 200000000;

    GeneralAlgebra a2(CoxeterMatrix::simply_laced_a(2), p, opt);
    const RelationResidualReport r2 = presentation_residuals(a2);
    c.bound(r2.max(), 1e-7, "A2 relation residual");

    DihedralAlgebra d3(3, p);
    const BasisMatchReport match = dihedral_match(a2, d3);
    if (!match.permutation) c.fail("A2 basis is not a dihedral reordering");
    c.bound(match.residual, 1e-8, "A2/dihedral structure constants");

    GeneralAlgebra a3(CoxeterMatrix::simply_laced_a(3),
                      sample_generic_parameters(602, 1), opt);
    const RelationResidualReport r3 = presentation_residuals(a3);
    c.bound(r3.max(), 1e-7, "A3 relation residual");
    c.detail = "A3 spanning size " + std::to_string(a3.dimension()) +
               (a3.complete() ? " (closed)" : " (capped)");
  });

  run_criterion("scalar monodromy against the closed form", [&](Criterion& c) {
    double worst = 0.0;
    for (const cplx kc : {cplx(0.05, 0.0), cplx(0.03, 0.01), cplx(-0.2, 0.07)}) {
      const cplx got = abelian_circle_monodromy(kc, cplx(0, 0), 1.0);
      worst = std::max(worst,
                       std::abs(got - std::exp(cplx(0, 2.0 * M_PI) * kc)));
    }
    c.bound(worst, 1e-10, "closed-form deviation");
    c.detail = "max " + fmt(worst);
  });

  run_criterion("commutant of the monodromy image", [&](Criterion& c) {
    if (!need_draws(c)) return;
    for (int m : kMonodromyOrders) {
      const Draw& dr = draws[m].front();
      c.equal(commutant_dimension({dr.bm.t0, dr.bm.t1}),
              (m % 2 == 1) ? 1 : 2, "m=" + std::to_string(m) + " commutant");
    }
  });

  std::printf("acceptance: %d/14 criteria passed\n", 14 - g_failed);
  return g_failed == 0 ? 0 : 1;
}
