#pragma once

// Periodic model of the continuous operators: 2^L samples per axis on
// [0,1), integer frequencies -2^(L-1) .. 2^(L-1)-1, and radial symbols
// evaluated at |xi|. Sample grids reuse the step-function carriers.

#include "twist/dyadic.hpp"
#include "twist/random.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace twist {

/// Symbol values indexed like the DFT output (index m is frequency m or m - n).
using Symbol = std::vector<double>;

class PeriodicGrid {
public:
    explicit PeriodicGrid(int L);

    int L() const { return L_; }
    int size() const { return 1 << L_; }
    /// Signed frequency of DFT index m.
    int frequency(int m) const { return m < size() / 2 ? m : m - size(); }

    /// Symbol m -> profile(|frequency(m)|).
    Symbol radial_symbol(const std::function<double(double)>& profile) const;

    /// Inverse DFT of symbol times DFT of the line, real part kept.
    void apply(std::span<double> line, const Symbol& symbol) const;
    /// Forward then inverse transform; the identity up to round-off.
    std::vector<double> round_trip(std::span<const double> line) const;

private:
    struct Plans;
    int L_;
    std::shared_ptr<Plans> plans_;
};

StepFunction1D multiplier_apply(const PeriodicGrid& grid, const StepFunction1D& f,
                                const Symbol& symbol);
/// Applies the symbol along one axis; axis x runs over the first index.
StepFunction2D multiplier_apply(const PeriodicGrid& grid, const StepFunction2D& F,
                                const Symbol& symbol, Axis axis);

// Profiles ------------------------------------------------------------------

/// Plateau: 1 for t <= 2^-0.6, 0 for t >= 2^-0.4, quintic smoothstep in log2 t
/// between. Values are rounded to multiples of 2^-40 so that differences and
/// short sums of sampled values are exact in double precision.
double plateau_profile(double t);
/// (1 - s^2)^3 with s = log2 t for 1/2 < t < 2, else 0.
double bump_profile(double t);
/// t * d/dt of bump_profile.
double bump_log_derivative(double t);

/// Sampled symbols on a periodic grid for scales kmin..kmax. Fractional
/// scales a are passed in tenths (a = t / 10).
class MollifierFamily {
public:
    MollifierFamily(int L, int kmin, int kmax);

    const PeriodicGrid& grid() const { return grid_; }
    int kmin() const { return kmin_; }
    int kmax() const { return kmax_; }

    /// plateau(2^-a |xi|)
    Symbol phi(int tenths) const;
    Symbol phi_k(int k) const { return phi(10 * k); }
    /// phi_{a+1} - phi_a
    Symbol vartheta(int tenths) const;
    /// phi_{a+0.6} - phi_{a+0.5}
    Symbol rho(int tenths) const;
    /// bump(2^-k |xi|)
    Symbol psi_k(int k) const;
    /// Sum of psi_k over k in kmin..kmax with k = l mod 10.
    Symbol Psi(int l) const;

private:
    PeriodicGrid grid_;
    int kmin_;
    int kmax_;
};

/// Needs 0 <= kmin <= kmax <= L - 3, so every psi_k stays below Nyquist.
MollifierFamily build_mollifiers(int L, int kmin, int kmax);

struct SupportIdentityReport {
    /// [0]: vartheta_a rho_a = rho_a; [1]: sum_i rho_{k+0.1i} = 1 on supp psi_k;
    /// [2]: the same sum = 0 on supp psi_k' for |k - k'| >= 10.
    std::size_t checked[3] = {0, 0, 0};
    std::size_t violations[3] = {0, 0, 0};
    double max_deviation[3] = {0, 0, 0};

    bool exact() const { return violations[0] + violations[1] + violations[2] == 0; }
};

/// Bitwise comparison at every lattice frequency. Fractional scales a run over
/// tenths -20 .. 10L + 20; integer k and k' over -10 .. L + 10.
SupportIdentityReport check_support_identities(const MollifierFamily& family);

/// Converts b in {-2.0, -1.9, ..., 2.0} to tenths; throws std::invalid_argument otherwise.
int shift_tenths(double b);

/// sum_k (P_phi_k^(1) F)(P_psi_k^(2) G), k in kmin..kmax.
StepFunction2D t_c(const StepFunction2D& F, const StepFunction2D& G, const MollifierFamily& fam);
/// sum_k (P_phi_k^(1) F)(P_vartheta_{k+b}^(2) G).
StepFunction2D t_phi_theta_b(const StepFunction2D& F, const StepFunction2D& G, double b,
                             const MollifierFamily& fam);
/// sum over k = l mod 10 of (P_phi_k^(1) F)(P_rho_{k+b}^(2) G).
StepFunction2D sparse_paraproduct(const StepFunction2D& F, const StepFunction2D& G, double b,
                                  int l, const MollifierFamily& fam);
/// sum over k = l mod 10 of P_rho_{k+b}^(2) G.
StepFunction2D g_tilde(const StepFunction2D& G, double b, int l, const MollifierFamily& fam);
/// sum_k (E_k^(1) F)(P_vartheta_{k+b}^(2) G) with dyadic block averages E_k.
StepFunction2D t_aux(const StepFunction2D& F, const StepFunction2D& G, double b,
                     const MollifierFamily& fam);

/// max |t_c(F,G) - sum_l sum_i sparse_paraproduct(F, P_Psi_l^(2) G, 0.1 i, l)|.
double decomposition_identity_residual(const StepFunction2D& F, const StepFunction2D& G,
                                       const MollifierFamily& fam);

/// (sum_{k=kmin}^{kmax} |P_phi_k f - E_k f|^2)^(1/2) with phi_k given by
/// profile(2^-k |xi|). Requires profile(0) = 1.
StepFunction1D jsw_square_function(const StepFunction1D& f, int kmin, int kmax,
                                   const std::function<double(double)>& profile = plateau_profile);
/// Same along one axis of a 2D sample grid.
StepFunction2D jsw_square_function(const StepFunction2D& F, Axis axis, int kmin, int kmax,
                                   const std::function<double(double)>& profile = plateau_profile);
/// (sum_k |P_{s_k} F|^2)^(1/2) along an axis for the given symbols.
StepFunction2D square_function(const StepFunction2D& F, Axis axis, const std::vector<Symbol>& symbols,
                               const PeriodicGrid& grid);

/// max over samples of |t_phi_theta_b - t_aux| - S_JSW^(1) F (sum_k |P_vartheta_{k+b}^(2) G|^2)^(1/2).
/// Nonpositive up to round-off.
double aux_difference_excess(const StepFunction2D& F, const StepFunction2D& G, double b,
                             const MollifierFamily& fam);

/// With a mean-zero first symbol (vartheta_k in place of phi_k):
/// max of |sum_k (P_vartheta_k^(1) F)(P_psi_k^(2) G)| minus the product of the two
/// square functions. Nonpositive up to round-off.
double mean_zero_branch_excess(const StepFunction2D& F, const StepFunction2D& G,
                               const MollifierFamily& fam);

struct PsiBounds {
    double max_abs = 0.0;         ///< max |Psi_l(xi)| over lattice and l
    double max_log_derivative = 0.0; ///< max |xi d/dxi Psi_l(xi)|
};
PsiBounds psi_symbol_bounds(const MollifierFamily& fam);

/// Real trigonometric polynomial with `modes` random terms of frequency at
/// most max_freq per axis.
StepFunction2D random_band_limited(int L, int max_freq, int modes, Rng& rng);
StepFunction1D random_band_limited_1d(int L, int max_freq, int modes, Rng& rng);

} // namespace twist
