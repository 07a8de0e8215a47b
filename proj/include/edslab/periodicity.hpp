#pragma once

#include <string>

#include "edslab/divpoly.hpp"

namespace edslab {

/// Witness for the periodicity of (F_n(P) mod p): the rank of apparition r,
/// the symmetry order t, the minimal period r*s with s | t, the units a, b,
/// and the window on which minimality was verified.
struct PeriodCertificate {
    Integer p;
    long r = 0;
    long t = 0;
    long s = 0;
    long period = 0;
    Integer a; // units of F_p, stored as canonical residues in [0, p)
    Integer b;
    bool r2_mode = false;
    long window_k = 0; // symmetry identity verified for k <= window_k,
    long window_n = 0; // n <= window_n
};

/// Symmetry units of Theorem 8, computed in F_p.
/// r >= 3: a = F_{r+2}/(F_2 F_{r+1}), b = F_2 F_{r+1}^2 / F_{r+2}.
/// r = 2:  a = F_3, b = a^{-2} F_5 (so that F_{2k+1} = a^k b^{(k^2-k)/2}).
std::pair<Residue, Residue> symmetry_constants(const CurveQ& E, const PointQ& P, const Integer& p,
                                               bool allow_singular = false);

/// Detect and certify the minimal period of (F_n(P) mod p). `bound` caps the
/// admissible period; 0 means "choose automatically" (4rt + r).
PeriodCertificate find_period(const CurveQ& E, const PointQ& P, const Integer& p, long bound = 0,
                              bool allow_singular = false);

struct SymmetryCheck {
    bool ok = true;
    long k = -1, n = -1; // first counterexample when !ok
    explicit operator bool() const { return ok; }
};

/// Check F_{kr+n}(P) = a^{kn} b^{k^2} F_n(P) mod p for all 0 <= k <= K_max,
/// 0 <= n <= N_max (r >= 3), or formula (4) plus F_{2k} = 0 (r = 2).
SymmetryCheck verify_symmetry(const CurveQ& E, const PointQ& P, const Integer& p, long K_max,
                              long N_max, bool allow_singular = false);

std::string to_json(const PeriodCertificate& c);
PeriodCertificate period_certificate_from_json(const std::string& s);

// Shared helper: the reduced-mod-p value sequence F_0..F_N at P.
std::vector<Residue> divpoly_sequence_mod_p(const CurveQ& E, const PointQ& P, const Integer& p,
                                            long N, bool allow_singular = false);

} // namespace edslab
