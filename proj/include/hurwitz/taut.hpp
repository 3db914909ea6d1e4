#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hurwitz/arith.hpp"
#include "hurwitz/chevalley_weil.hpp"
#include "hurwitz/graphs.hpp"

namespace hurwitz {

/// a_0 X^N + a_1 X^(N-1) Y + ... + a_N Y^N.
struct BinaryForm {
    std::vector<Rat> coeffs;
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    bool is_zero() const;
};

/// Multiplicities of the distinct roots in P^1, sorted ascending; dual form m_1^k_1 ... m_s^k_s.
struct PartitionType {
    std::vector<long> parts;
    std::vector<std::pair<long, long>> dual() const;
    long weight() const;
    std::string to_string() const;
    bool operator==(const PartitionType&) const = default;
};

/// Product of the linear forms u X + v Y.
BinaryForm viete(const std::vector<std::pair<Rat, Rat>>& factors);
/// Root multiplicities from the square-free decomposition over Q; a_0 = 0 counts as a root at infinity.
PartitionType classify(const BinaryForm& f);
/// Dimension of the affine cone over P^k_1 x ... x P^k_s.
long stratum_dim(const PartitionType& mu);
/// Line bundle O(m_1, ..., m_s) pulled back by the Viete map on P^k_1 x ... x P^k_s.
std::vector<long> stratum_bidegree(const PartitionType& mu);
/// eta <= mu: every part of eta is the sum of a group of parts of mu.
bool incidence(const PartitionType& eta, const PartitionType& mu);

struct RootExponents {
    std::vector<Int> offsets;  // [i nu_j / e_j]
    Int degree_l;              // deg L = -sum m_j nu_j / n
    Int degree_li;             // i deg L + sum offsets
};

/// L_i = L^i([iB/n]) for the cyclic datum B = sum m_j nu_j Q_j.
RootExponents root_exponents(long n, const std::vector<CyclicBranch>& branches, long i);

/// Rational combination of symbols: lambda', lambda[v], psi[i], mu[i], psi[i,j], kappa[a], kappa'[a],
/// kappatilde[1], omega.omega and boundary labels delta[...] / delta_irr[...]. Indices are 1-based.
struct PicElement {
    std::map<std::string, Rat> coeff;

    void add(const std::string& symbol, const Rat& c);
    Rat get(const std::string& symbol) const;
    bool is_zero() const { return coeff.empty(); }
    PicElement operator+(const PicElement& o) const;
    PicElement operator-(const PicElement& o) const;
    PicElement operator*(const Rat& c) const;
    bool operator==(const PicElement&) const = default;
    std::string to_string() const;
};

struct PicContext {
    long n = 0;
    long base_genus = 0;
    std::vector<CyclicBranch> branches;
    std::vector<BoundaryComponent> boundary;
};

/// Fills the boundary list from boundary_components.
PicContext make_context(long n, long base_genus, const std::vector<CyclicBranch>& branches);

/// Rewrites to the basis lambda', lambda[v], psi[i], kappa'[a], omega.omega, delta; torsion classes go to 0.
PicElement pic_normalize(const PicElement& x, const PicContext& ctx, std::vector<std::string>* warnings = nullptr);

/// Lambda relation for the j-th eigenbundle, moved to one side (equal to 0): 2n(lambda' - lambda[n-j]) - sum jn<x>mu + sum n<x>(1+[x])psi
/// - sum_NS a(j)b(j)/m delta, with x = j m nu / n, a(j) = n<ja/n>, b(j) = n - a(j), m = n/e.
/// Without boundary this is the relation on the open part.
PicElement lambda_relation(const PicContext& ctx, long j, bool with_boundary = true);

/// p * sum_j of the relations for a prime p over P^1, normalized, with sum_v lambda[v] collected as "lambda".
PicElement summed_relation(long p, const std::vector<long>& nu);
/// Closed prime form moved to one side: -2p^2 lambda + p(p^2-1)/6 sum psi - p^2(p^2-1)/6 sum_NS delta (equal to 0).
PicElement summed_relation_expected(long p, const std::vector<long>& nu);

struct BoundaryRelationRow {
    bool ns = false;
    long j = 0;       // |I|, the smaller side
    long index = 0;   // alpha (j = 2 alpha) or beta (j = 2 beta + 1)
    Rat coefficient;  // per component
    size_t components = 0;
};

struct HyperellipticBoundaryRelation {
    long genus = 0;
    Rat lambda;                           // 8(2g+1)
    std::vector<BoundaryRelationRow> rows;  // R rows then NS rows
    PicElement relation;                  // lambda * lambda - sum coefficient * delta (equal to 0)
};

/// p = 2 over 2g+2 Weierstrass points: the closed prime form times 2g+1, with sum psi replaced by its boundary pullback.
HyperellipticBoundaryRelation hyperelliptic_boundary_relation(long genus);

struct HyperellipticLocusRelation {
    Rat lambda;
    Rat delta_r1;                                 // [Delta_1^R]
    std::vector<std::pair<long, Rat>> delta_r;    // alpha >= 2
    std::vector<std::pair<long, Rat>> delta_ns;   // beta >= 1
};

/// Pushed to the unlabeled locus: the proof-end (8g+4) normalization and the stated (4g+2) one.
std::pair<HyperellipticLocusRelation, HyperellipticLocusRelation> hyperelliptic_locus_relation(long genus);

/// int over M_{0,n} of prod psi_i^alpha_i; 0 if the degree is not n - 3.
Rat psi_integral(long n, const std::vector<long>& alpha);
/// Same through the string equation.
Rat psi_integral_string(long n, const std::vector<long>& alpha);
/// tau_{a,n} = int over M_{0,n} of kappa_a psi_1^(n-3-a): recursion from the forgetful pullback, and closed form.
Int tau_recursive(long a, long n);
Int tau_closed(long a, long n);

/// int over the one-pointed hyperelliptic stack of kappa_a mu_1^(2g-1-a).
Rat hyperelliptic_integral_closed(long genus, long a);
Rat hyperelliptic_integral_pipeline(long genus, long a);
/// int mu_1^(2g-1) through M_{0,2g+2}.
Rat hyperelliptic_mu_integral(long genus);
/// Coefficient of t^(2g) in sin(t/2)/(t/2).
Rat sinc_half_coefficient(long genus);

enum class RecursionWeight { published, rederived };

/// B_{g,xi} = int lambda^(b-3) over the stack of Z/p covers of P^1 with branch values xi.
Rat hodge_recursion(long p, long genus, const std::vector<long>& xi, RecursionWeight w = RecursionWeight::published);
/// Base value 1/e for three branch points.
Rat hodge_base(long p, const std::vector<long>& xi);

}  // namespace hurwitz
