#pragma once

#include "jdcalc/extbundle.hpp"

#include <functional>
#include <optional>

namespace jdcalc {

enum class DistMode { aligned, pointwise };

/// A subbundle D of TM x R given by grade-1 generators.
///
/// aligned mode: every generator is a single coordinate field (d/dx_i, 0)
/// with distinct indices; rank = generator count; mod-D statements are exact.
/// pointwise mode: polynomial generators; the declared rank is validated at
/// every sampled point (constant-rank assumption) and mod-D statements are
/// decided by exact rational linear algebra at the sampled points.
struct SubbundleSpec {
    Chart chart;
    std::vector<ExtVec> generators;
    int rank = 0;
    DistMode mode = DistMode::aligned;
    int samples = 8;
    std::uint64_t seed = 0;
    bool grid = false;   // sample a (deg+1)-lattice instead of random points

    static SubbundleSpec aligned(const Chart& chart, const std::vector<int>& indices);
    static SubbundleSpec pointwise(const Chart& chart, std::vector<ExtVec> generators,
                                   int samples, std::uint64_t seed, bool grid = false);

    bool is_aligned() const { return mode == DistMode::aligned; }
    /// Coordinate indices of an aligned spec (validates the alignment rule).
    std::vector<int> aligned_indices() const;
    /// True iff every generator has zero e-part.
    bool all_epart_zero() const;
    /// Sample points for pointwise checks; validates constant rank and
    /// throws input_error with the witness point on a rank drop.
    std::vector<std::vector<Rational>> sample_points(int ambient_degree) const;
};

/// L = D + graph(Omega^# restricted to the conormal bundle).
struct CharPair {
    SubbundleSpec d;
    ExtVec omega;   // grade-2

    CharPair(SubbundleSpec d_, ExtVec omega_);
};

/// Description of the conormal bundle D-perp.
struct Conormal {
    DistMode mode;
    /// aligned: spanning sections {(dx_j,0) : j not in D} plus (0,1).
    std::vector<ExtForm> basis;
    /// membership test; exact in aligned mode, sampled in pointwise mode.
    std::function<bool(const ExtForm&)> contains;
};

Conormal conormal(const SubbundleSpec& d);

/// Result of a mod-D reduction: exact remainder in aligned mode, a sampled
/// verdict with failing-point witness otherwise.
struct ModDResult {
    bool is_zero_mod_d = false;
    std::optional<ExtVec> remainder;                     // aligned
    std::optional<std::vector<Rational>> witness_point;  // pointwise failure
    int samples = 0;
    std::uint64_t seed = 0;
    bool sampled = false;
};

/// Aligned: drops every wedge monomial containing a D index and returns the
/// remainder. Pointwise: checks P(x) in D_x ^ (k-1 fold wedge) by exact
/// linear algebra at the sample points.
ModDResult mod_d_reduce(const SubbundleSpec& d, const ExtVec& p);

/// Exact remainder of the aligned term-dropping reduction.
ExtVec mod_d_remainder(const SubbundleSpec& d, const ExtVec& p);

/// Verifies that L is maximal isotropic: all pairwise (.,.)_+ products of
/// the symbolic generators vanish identically and rank L = dim + 1.
bool isotropy_check(const CharPair& pair);

/// Integrability criteria for L = D + graph(Omega^#|D-perp) with P = (Lambda,E):
///  (i)   ext_bracket of every generator pair vanishes mod D;
///  (ii)  [P+Omega, P+Omega]^phi vanishes mod D;
///  (iii) for every generator X of D, [X, P+Omega]^phi vanishes exactly
///        (the generators preserve P+Omega; see the operation docs).
CheckReport dirac_criteria(const JacobiStructure& j, const CharPair& pair);

struct AdmissibleResult {
    bool admissible = false;
    std::optional<ExtVec> witness;       // canonical Y_f = Omega^#(d^phi f)
    std::optional<int> violated_index;   // aligned D direction with df/dx != 0
};

/// f is admissible iff d^phi f = (df, f) is a section of D-perp.
AdmissibleResult admissible_check(const JacobiStructure& j, const CharPair& pair, const Poly& f);

/// {f,g}_L = <Y_f, d^phi g> + {f,g}_J with the canonical witness.
/// Throws input_error naming the violated D direction on inadmissible input.
Poly l_bracket(const JacobiStructure& j, const CharPair& pair, const Poly& f, const Poly& g);

/// Characteristic equations of L at sampled points:
/// L cap A = D, proj_*(L) = D-perp, proj(L)-perp = L cap A*.
bool characteristic_equations_check(const CharPair& pair);

} // namespace jdcalc
