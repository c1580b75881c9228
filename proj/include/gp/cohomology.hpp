#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gp/linalg.hpp"
#include "gp/schouten.hpp"

namespace gp {

// Cochains with n derivation symbols, total Z2 degree `parity`, coefficient of total degree e
// (even and odd variables both counted).
struct SliceSpec {
    int m = 0;
    int n_odd = 0;
    int exterior_degree = 0;  // number of symbols n of C^n
    int parity = 0;           // total Z2 degree
    int internal_degree = 0;  // e

    bool operator<(const SliceSpec& o) const {
        return std::tie(exterior_degree, parity, internal_degree) <
               std::tie(o.exterior_degree, o.parity, o.internal_degree);
    }
};

struct BasisElement {
    ExteriorMonomial ext;
    GradedMonomial mono;
};

std::vector<BasisElement> slice_basis(const SliceSpec& spec);
std::size_t slice_dimension(const SliceSpec& spec);  // closed-form count
MultiDerivation basis_cochain(const BasisElement& b, int m, int n);

struct InternalHomogeneity {
    bool homogeneous = false;
    int symbols = 0;       // k of C^k
    int coef_degree = 0;   // delta
};
InternalHomogeneity internal_homogeneity(const MultiDerivation& psi);

// Matrix of D = {psi, .} from `source` to the slice it lands in.
Matrix d_matrix(const MultiDerivation& psi, const SliceSpec& source);
SliceSpec d_target(const MultiDerivation& psi, const SliceSpec& source);

struct CohomologyOptions {
    bool deformation_convention = false;  // drop coboundaries sourced in C^0 for odd targets
    int coef_slack = -1;                  // filtered engine: extra coefficient degree for sources/tails (auto if < 0)
    int ext_slack = -1;                   // filtered engine: exterior degrees allowed in cocycle tails (auto if < 0)
    unsigned threads = 0;                 // 0: hardware concurrency
};

struct SliceResult {
    int dim_z = 0;
    int dim_b = 0;
    int dim_h = 0;
    std::vector<MultiDerivation> representatives;
    bool converged = true;
};

SliceResult slice_cohomology(const MultiDerivation& psi, const SliceSpec& spec, const CohomologyOptions& opt = {});

// Filtered cohomology of a general codifferential: for target (n, parity) returns F(e) for e = 0..e_max,
// F(e) = dim Z_{<=e} - dim B_{<=e} on leading parts in C^n.
struct FilteredResult {
    std::vector<int> cumulative_h;  // F(e)
    std::vector<int> cumulative_z;
    std::vector<int> cumulative_b;
    bool converged = true;          // unchanged under increased slack
    bool consistent = true;         // B contained in Z at every truncation
};
FilteredResult filtered_cohomology(const MultiDerivation& psi, int n, int parity, int e_max,
                                   const CohomologyOptions& opt = {});

enum class ParityFilter { Odd, Even, Both };

struct CohomologyTable {
    bool filtered = false;
    std::map<SliceSpec, SliceResult> slices;
    // per (n, parity): true when the cumulative dimension changed between e_max-1 and e_max
    std::map<std::pair<int, int>, bool> unstable_in_e;

    int total(int n, int parity) const;
};

CohomologyTable cohomology_table(const MultiDerivation& psi, int n_max, int e_max, ParityFilter filter,
                                 const CohomologyOptions& opt = {});

}  // namespace gp
