#pragma once

#include <memory>
#include <optional>
#include <string>

#include "bv.hpp"
#include "report.hpp"

namespace fp {

struct RunConfig {
  std::string command;
  std::string coeff;            // regular | dual | twist; empty = command default
  int max_total_degree = -1;    // bv-check sweep bound; -1 = nvars + 1
  std::optional<FieldSpec> field_override;
};

// One algebra, all commands. Owns the algebra and every derived structure so
// references stay valid for the engine's lifetime.
template <class K>
class Engine {
 public:
  explicit Engine(const Presentation& p)
      : pres_(p),
        algebra_(build_algebra<K>(p)),
        omega_(algebra_),
        left_regular_(left_regular_module(algebra_)),
        x_(omega_, left_regular_) {}

  const Algebra<K>& algebra() const { return algebra_; }
  const OmegaComplex<K>& omega() const { return omega_; }
  const HomComplex<K>& multiderivations() const { return x_; }

  const FrobeniusForm<K>& frobenius() const {
    if (!frob_) frob_ = std::make_unique<FrobeniusForm<K>>(frobenius_form(algebra_, FrobeniusSpec::from_presentation(pres_)));
    return *frob_;
  }

  // regular | dual | twist as a right Poisson module
  const PoissonModule<K>& coefficient_module(const std::string& coeff) const {
    auto& slot = coeff_cache_[coeff];
    if (!slot) {
      if (coeff == "regular") {
        slot = std::make_unique<PoissonModule<K>>(regular_module(algebra_));
      } else if (coeff == "dual") {
        slot = std::make_unique<PoissonModule<K>>(dual_module(left_regular_));
      } else if (coeff == "twist") {
        slot = std::make_unique<PoissonModule<K>>(twisted_module(algebra_, frobenius().gram));
      } else {
        throw FpError(errc::parse_error, "unknown coefficient choice '" + coeff + "' (want regular|dual|twist)");
      }
    }
    return *slot;
  }

  const TensorComplex<K>& tensor_complex(const std::string& coeff) const {
    auto& slot = tensor_cache_[coeff];
    if (!slot) slot = std::make_unique<TensorComplex<K>>(omega_, coefficient_module(coeff));
    return *slot;
  }

  Report base_report(const std::string& command) const {
    Report r;
    r.algebra_name = algebra_.name;
    r.algebra_dim = algebra_.dim();
    r.field = algebra_.field.str();
    r.command = command;
    return r;
  }

  Report cmd_validate() const {
    Report r = base_report("validate");
    r.checks = validate_algebra(algebra_).checks;
    return r;
  }

  Report cmd_basis() const {
    Report r = base_report("basis");
    DegreeRow row;
    row.k = 0;
    row.dim = algebra_.dim();
    for (const auto& e : algebra_.basis) row.representatives.push_back(render_monomial(e, algebra_.vars));
    r.degrees.push_back(std::move(row));
    return r;
  }

  Report cmd_homology(const std::string& coeff) const {
    Report r = base_report("homology");
    const TensorComplex<K>& t = tensor_complex(coeff);
    HomologyResult<K> h = poisson_homology(t);
    for (int k = 0; k < static_cast<int>(h.dims.size()); ++k)
      r.degrees.push_back({k, h.dims[k], h.representatives[k]});
    auto& c = r.checks.emplace_back(CheckRow{"boundary_squares_to_zero", true, "coefficients " + coeff});
    for (int k = 2; k <= t.top_degree() + 1; ++k)
      if (!(t.boundary(k - 1) * t.boundary(k)).is_zero()) c.pass = false;
    return r;
  }

  Report cmd_cohomology() const {
    Report r = base_report("cohomology");
    CohomologyResult h = poisson_cohomology(x_);
    for (int k = 0; k < static_cast<int>(h.dims.size()); ++k)
      r.degrees.push_back({k, h.dims[k], h.representatives[k]});
    auto& c = r.checks.emplace_back(CheckRow{"coboundary_squares_to_zero", true, ""});
    for (int k = 0; k <= x_.top_degree(); ++k)
      if (!(x_.coboundary(k + 1) * x_.coboundary(k)).is_zero()) c.pass = false;
    return r;
  }

  // HP^i(S, S) against HP_i(S, M) through the phi square, with the
  // delta'-complex of Hom(Omega, M*) computed independently on the left side.
  Report cmd_duality(const std::string& coeff) const {
    Report r = base_report("duality");
    const TensorComplex<K>& ten = tensor_complex(coeff);
    PoissonModule<K> mstar = dual_module(ten.module());
    HomComplex<K> hom(omega_, mstar);

    CohomologyResult upper = poisson_cohomology(x_);
    HomologyResult<K> lower = poisson_homology(ten);

    bool phi_ok = true, phi_iso = true;
    for (int k = 0; k <= algebra_.nvars(); ++k) {
      Mat<K> phi_k = phi_matrix(hom, ten, k);
      Mat<K> phi_up = phi_matrix(hom, ten, k + 1);
      if (phi_k.rows != phi_k.cols || !inverse(phi_k)) phi_iso = false;
      const Mat<K>& delta = hom.coboundary(k);
      Mat<K> partial_t = ten.boundary(k + 1).transpose();
      if (!((phi_up * delta) == (partial_t * phi_k))) phi_ok = false;
    }
    r.checks.push_back({"phi_diagram_commutes", phi_ok, "coefficients " + coeff});
    r.checks.push_back({"phi_is_isomorphism", phi_iso, ""});

    // cohomology of the delta' complex with coefficients M*
    std::vector<int> hom_side;
    for (int k = 0; k <= algebra_.nvars() + 1; ++k) {
      Mat<K> d_out = hom.coboundary(k);
      Mat<K> d_in = k == 0 ? Mat<K>(hom.space(0).dim(), 0) : hom.coboundary(k - 1);
      hom_side.push_back(homology_dim(d_in, d_out).dim);
    }
    bool hom_matches = true;
    for (std::size_t k = 0; k < lower.dims.size(); ++k)
      if (hom_side[k] != lower.dims[k]) hom_matches = false;
    r.checks.push_back({"hom_complex_dims_match_homology", hom_matches, ""});

    for (int k = 0; k < static_cast<int>(lower.dims.size()); ++k) {
      r.degrees.push_back({k, upper.dims[k], {}});
      bool equal = upper.dims[k] == lower.dims[k];
      r.checks.push_back({"duality_dim_" + std::to_string(k), equal,
                          "dim HP^" + std::to_string(k) + "(S,S) = " + std::to_string(upper.dims[k]) +
                              ", dim HP_" + std::to_string(k) + "(S,M) = " + std::to_string(lower.dims[k])});
    }
    return r;
  }

  Report cmd_unimodular() const {
    Report r = base_report("unimodular");
    UnimodularResult<K> u = unimodularity(x_, frobenius());
    r.checks.push_back({"criterion_delta_pi_zero", u.delta_pi_zero, ""});
    r.checks.push_back({"criterion_pairing_identity", u.pairing_identity, ""});
    r.checks.push_back({"criterion_sigma_morphism", u.sigma_morphism, ""});
    r.checks.push_back({"unimodular", u.unimodular,
                        u.unimodular ? "" : "modular element: " + render_hom_element(x_, 1, u.modular.values)});
    return r;
  }

  Report cmd_modular_vector() const {
    Report r = base_report("modular-vector");
    MDeriv<K> m = bv_delta(x_, frobenius(), pi_bivector(x_));
    r.checks.push_back({"modular_vector", true, render_hom_element(x_, 1, m.values)});
    return r;
  }

  Report cmd_bv_check(int max_total_degree) const {
    Report r = base_report("bv-check");
    if (max_total_degree < 0) max_total_degree = algebra_.nvars() + 1;
    BVIdentityReport b = bv_identity_check(x_, frobenius(), max_total_degree);
    auto count = [](long long fails, long long total) {
      return std::to_string(total - fails) + "/" + std::to_string(total) + " pass";
    };
    r.checks.push_back({"eqxx1", b.eqxx1_fail == 0, count(b.eqxx1_fail, b.pairs)});
    r.checks.push_back({"eqxx2", b.eqxx2_fail == 0, count(b.eqxx2_fail, b.pairs)});
    r.checks.push_back({"eqxx3", b.eqxx3_fail == 0, count(b.eqxx3_fail, b.pairs)});
    r.checks.push_back({"wedge_split", b.split_fail == 0, count(b.split_fail, b.pairs)});
    r.checks.push_back({"delta_squared_zero", b.delta_sq_fail == 0, count(b.delta_sq_fail, b.delta_sq_checked)});
    if (!b.witnesses.empty()) {
      std::string w;
      for (const auto& s : b.witnesses) w += (w.empty() ? "" : "; ") + s;
      r.checks.push_back({"witnesses", false, w});
    }
    return r;
  }

  Report cmd_bv_cohomology() const {
    Report r = base_report("bv-cohomology");
    CohomologyBVResult b = cohomology_bv(x_, frobenius());
    r.checks.push_back({"unimodular_precondition", b.unimodular, b.unimodular ? "" : "algebra is not unimodular"});
    if (!b.unimodular) return r;
    r.checks.push_back({"delta_delta_anticommute", b.anticommutes, ""});
    r.checks.push_back({"delta_squared_zero_on_hp", b.delta_sq_on_hp, ""});
    r.checks.push_back({"eqxx1_modulo_coboundaries", b.eqxx1_mod_coboundary, ""});
    for (const auto& line : b.induced_delta) r.checks.push_back({"induced_delta", true, line});
    return r;
  }

  Report run(const RunConfig& cfg) const {
    const std::string& c = cfg.command;
    std::string coeff = cfg.coeff;
    if (c == "validate") return cmd_validate();
    if (c == "basis") return cmd_basis();
    if (c == "homology") return cmd_homology(coeff.empty() ? "regular" : coeff);
    if (c == "cohomology") return cmd_cohomology();
    if (c == "duality") return cmd_duality(coeff.empty() ? "twist" : coeff);
    if (c == "unimodular") return cmd_unimodular();
    if (c == "modular-vector") return cmd_modular_vector();
    if (c == "bv-check") return cmd_bv_check(cfg.max_total_degree);
    if (c == "bv-cohomology") return cmd_bv_cohomology();
    throw FpError(errc::parse_error, "unknown command '" + c + "'");
  }

 private:
  Presentation pres_;
  Algebra<K> algebra_;
  OmegaComplex<K> omega_;
  PoissonModule<K> left_regular_;
  HomComplex<K> x_;
  mutable std::unique_ptr<FrobeniusForm<K>> frob_;
  mutable std::map<std::string, std::unique_ptr<PoissonModule<K>>> coeff_cache_;
  mutable std::map<std::string, std::unique_ptr<TensorComplex<K>>> tensor_cache_;
};

// Field dispatch: commands on a presentation run over Q or GF(p).
inline Report run_command(const Presentation& pres, const RunConfig& cfg) {
  Presentation p = pres;
  if (cfg.field_override) p.field = *cfg.field_override;
  if ((cfg.command == "cohomology" || cfg.command == "validate" || cfg.command == "basis" ||
       cfg.command == "unimodular" || cfg.command == "modular-vector" || cfg.command == "bv-check" ||
       cfg.command == "bv-cohomology") &&
      !cfg.coeff.empty())
    throw FpError(errc::parse_error, "--coeff is only valid for homology and duality commands");
  if (p.field.rational()) return Engine<Rat>(p).run(cfg);
  return Engine<GFp>(p).run(cfg);
}

}  // namespace fp
