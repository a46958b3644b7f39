#pragma once

#include "pnofdm/random.hpp"
#include "pnofdm/types.hpp"

#include <memory>
#include <vector>

namespace pnofdm {

struct OscillatorSpec
{
    double beta_hz = 0.0;       // two-sided 3-dB linewidth
    double sample_period_s = 0; // T_s

    double increment_variance() const;
    void validate() const;
};

struct PnRealization
{
    std::vector<double> phi; // window phases (after the prefix)
    ComplexVec p_t;          // exp(j phi)
    ComplexVec p_f;          // forward DFT with 1/N scaling
    double next_phase = 0.0; // phase of the sample following the window
};

// Wiener phase over n_prefix + n_samples samples starting at initial_phase.
// Only the last n_samples are returned.
PnRealization generate_pn(const OscillatorSpec& spec,
                          int n_samples,
                          double initial_phase,
                          RandomSource& rng,
                          int n_prefix = 0);

// p_f = dft(p_t) / sqrt(N)
ComplexVec pn_spectrum(const ComplexVec& p_t);

// Dominant index order [N-gamma, ..., N-1, 0, ..., gamma].
std::vector<int> dominant_indices(int n, int gamma);

// Full N x N E{p_f p_f^H}.
ComplexMat compute_R_pp(const OscillatorSpec& spec, int n);

// Banded view of E{p_f p_f^H}: entries R(k, l) with circular offset
// |l - k| <= max_offset.
class PnCorrelation
{
public:
    static PnCorrelation compute(const OscillatorSpec& spec, int n, int max_offset);
    static PnCorrelation from_matrix(const ComplexMat& r_pp, int max_offset);

    int size() const { return n_; }
    int max_offset() const { return max_offset_; }
    cplx at(int k, int l) const;

private:
    int n_ = 0;
    int max_offset_ = 0;
    std::vector<ComplexVec> diagonals_; // diagonals_[d + max_offset][k] = R(k, k + d)
};

ComplexMat extract_R_pp_gamma(const PnCorrelation& r, int gamma);
ComplexMat extract_R_pp_gamma(const ComplexMat& r_pp, int gamma);
ComplexMat compute_R_ici_gamma(const PnCorrelation& r, int gamma);
ComplexMat compute_R_ici_gamma(const ComplexMat& r_pp, int gamma);
double p_dom(const PnCorrelation& r, int gamma);
double p_dom(const ComplexMat& r_pp, int gamma);

void check_gamma(int n, int gamma);

struct PnStats
{
    int n = 0;
    int gamma = 0;
    std::shared_ptr<const PnCorrelation> r_pp; // band covering offsets up to 2 gamma
    ComplexMat r_pp_gamma;
    ComplexMat r_ici_gamma;
    double p_dom = 1.0;
    double sigma_eps_sq = -1.0; // filled by calibration
    double g_bar = -1.0;        // filled by calibration

    int n_p() const { return 2 * gamma + 1; }
    bool calibrated() const { return sigma_eps_sq >= 0.0; }
};

PnStats make_pn_stats(const OscillatorSpec& spec, int n, int gamma);

} // namespace pnofdm
