#pragma once

// Many-one reductions between search problems: certificates, the checker,
// the brute-force oracle over the admissible maps, and certificate
// combinators for the order-theoretic constructions.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "manyone/subcat.hpp"
#include "manyone/term.hpp"

namespace manyone {

enum class ReductionKind { sm, m };
std::string to_string(ReductionKind k);
ReductionKind parse_reduction_kind(const std::string& s);

/// A problem together with the name used to print and reference it.
struct NamedProblem {
  std::string name;
  SearchProblem problem;
};

/// Strong (sm): f ⪯ H ∘ g ∘ K with K: Dom f -> Dom g, H: CDom g -> CDom f.
/// Plain (m): f ⪯ H ∘ (id × (g ∘ K)) ∘ Δ with H: Dom f × CDom g -> CDom f.
struct ReductionCert {
  ReductionKind kind = ReductionKind::m;
  NamedProblem f;
  NamedProblem g;
  Term H;
  Term K;
};

/// A combinator was handed a certificate that does not validate.
class InvalidCertificate : public Error {
 public:
  using Error::Error;
};

struct CertCheck {
  bool valid = false;
  HomOrderWitness witness;  // f against the reduction composite
};

/// Throws TypeError when the witnesses do not have the required types.
CertCheck check_cert(const ReductionCert& c, const TermEnv& env);
SearchProblem reduction_composite(const ReductionCert& c, const TermEnv& env);

struct OracleVerdict {
  bool yes = false;
  std::optional<ReductionCert> cert;
  int universe_depth = 0;
  std::size_t k_candidates = 0;  // pre-processor candidates examined
  std::size_t h_candidates = 0;  // post-processor candidates examined
};

/// Exhaustive search over the table's hom-sets; the first hit in canonical
/// (K, H) order is returned. Throws OutsideUniverse for objects beyond the
/// universe.
OracleVerdict decide(const NamedProblem& f, const NamedProblem& g, const SubcatTable& table,
                     ReductionKind kind);
/// f ≤_m star_trunc(g, n).
OracleVerdict wtt_leq(const NamedProblem& f, const NamedProblem& g, const SubcatTable& table, int n);

// Derived problems with printable names.
NamedProblem sup_of(const NamedProblem& a, const NamedProblem& b);    // a ⊔ b
NamedProblem inf_of(const NamedProblem& a, const NamedProblem& b);    // a ⊕ b
NamedProblem prod_of(const NamedProblem& a, const NamedProblem& b);   // a × b
NamedProblem sup_family(const std::vector<NamedProblem>& family);     // left-nested ⊔
NamedProblem star_of(const NamedProblem& a, int n);

// Combinators. Inputs are validated against `env`; invalid inputs throw
// InvalidCertificate.
ReductionCert refl_cert(const NamedProblem& f);
ReductionCert sm_to_m(const ReductionCert& c, const TermEnv& env);
ReductionCert trans_cert(const ReductionCert& c1, const ReductionCert& c2, const TermEnv& env);
ReductionCert sup_inj_cert(const std::vector<NamedProblem>& family, std::size_t index);
ReductionCert sup_univ_cert(const std::vector<ReductionCert>& certs, const TermEnv& env);
ReductionCert inf_proj_cert(const NamedProblem& f, const NamedProblem& g, int side);
ReductionCert inf_univ_cert(const ReductionCert& c1, const ReductionCert& c2, const TermEnv& env);
std::pair<ReductionCert, ReductionCert> distrib_cert(const NamedProblem& f, const NamedProblem& g1,
                                                     const NamedProblem& g2, const TermEnv& env);
ReductionCert prod_cert(const ReductionCert& c1, const ReductionCert& c2, const TermEnv& env);
ReductionCert star_intro_cert(const NamedProblem& f, int n, const TermEnv& env);
ReductionCert star_mono_cert(const ReductionCert& c, int n, const TermEnv& env);
ReductionCert star_collapse_cert(const NamedProblem& f, int n, int m);
/// The empty problem f reduces to every g.
ReductionCert bottom_cert(const NamedProblem& f, const NamedProblem& g);

/// One semiring law instance with certificates for both directions.
struct LawCerts {
  std::string law;
  ReductionCert forward;
  ReductionCert backward;
};

/// The semiring laws on the given problems. `empty` is an empty problem and
/// `unit` a single-point total identity.
std::vector<LawCerts> semiring_law_certs(const NamedProblem& a, const NamedProblem& b,
                                         const NamedProblem& c, const NamedProblem& empty,
                                         const NamedProblem& unit, const TermEnv& env);

// Choice-function dichotomy for ⊕.

class PreconditionError : public Error {
 public:
  using Error::Error;
};

struct PsiPhi {
  SearchProblem psi;  // Dom f -> CDom f
  SearchProblem phi;  // Dom g -> CDom g
  bool psi_chooses = false;  // psi is a total choice function of f
  bool phi_chooses = false;
  bool dichotomy() const { return psi_chooses || phi_chooses; }
  std::string report() const;
};

/// `choice` must be a choice function of f ⊕ g.
PsiPhi psi_phi(const SearchProblem& choice, const SearchProblem& f, const SearchProblem& g);

/// p ⪯ c with c single-valued.
bool is_choice_function(const SearchProblem& c, const SearchProblem& p);
/// Calls `visit` with every choice function of p defined exactly on dom(p).
void for_each_choice_function(const SearchProblem& p,
                              const std::function<void(const SearchProblem&)>& visit);

}  // namespace manyone
