#include "pnofdm/phase_noise.hpp"

#include "pnofdm/numerics.hpp"

#include <cmath>
#include <numbers>

namespace pnofdm {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

int wrap(int i, int n) { return ((i % n) + n) % n; }

// exp(j 2 pi (d m mod n) / n) without losing precision for large d*m.
cplx unit_root(long long d, long long m, int n)
{
    const long long e = ((d % n) * (m % n)) % n;
    return std::polar(1.0, two_pi * static_cast<double>(e) / n);
}

} // namespace

double OscillatorSpec::increment_variance() const { return two_pi * beta_hz * sample_period_s; }

void OscillatorSpec::validate() const
{
    if (!(beta_hz >= 0.0) || !std::isfinite(beta_hz))
        throw std::invalid_argument("oscillator linewidth must be finite and >= 0");
    if (!(sample_period_s > 0.0) || !std::isfinite(sample_period_s))
        throw std::invalid_argument("sample period must be finite and > 0");
}

ComplexVec pn_spectrum(const ComplexVec& p_t)
{
    ComplexVec p_f = dft_unitary(p_t);
    const double scale = 1.0 / std::sqrt(static_cast<double>(p_t.size()));
    for (auto& v : p_f)
        v *= scale;
    return p_f;
}

PnRealization generate_pn(const OscillatorSpec& spec, int n_samples, double initial_phase, RandomSource& rng, int n_prefix)
{
    spec.validate();
    if (n_samples < 1 || n_prefix < 0)
        throw std::invalid_argument("generate_pn: n_samples must be >= 1 and n_prefix >= 0");
    const double sd = std::sqrt(spec.increment_variance());

    PnRealization out;
    out.phi.resize(n_samples);
    out.p_t.resize(n_samples);
    double phase = initial_phase;
    for (int j = 0; j < n_prefix; ++j)
        phase += sd * rng.gaussian();
    for (int j = 0; j < n_samples; ++j) {
        out.phi[j] = phase;
        out.p_t[j] = std::polar(1.0, phase);
        phase += sd * rng.gaussian();
    }
    out.next_phase = phase;
    out.p_f = pn_spectrum(out.p_t);
    return out;
}

std::vector<int> dominant_indices(int n, int gamma)
{
    std::vector<int> idx;
    idx.reserve(2 * gamma + 1);
    for (int r = -gamma; r <= gamma; ++r)
        idx.push_back(wrap(r, n));
    return idx;
}

void check_gamma(int n, int gamma)
{
    if (gamma < 0 || gamma > n / 2 - 1)
        throw std::invalid_argument("approximation order out of range for N");
}

ComplexMat compute_R_pp(const OscillatorSpec& spec, int n)
{
    spec.validate();
    if (n < 2)
        throw std::invalid_argument("compute_R_pp: N must be >= 2");
    const double decay = std::numbers::pi * spec.beta_hz * spec.sample_period_s;
    std::vector<double> psi(n);
    for (int t = 0; t < n; ++t)
        psi[t] = std::exp(-decay * t);

    // M1 = D Psi, column by column.
    ComplexMat m1(n, n);
    ComplexVec col(n);
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r)
            col[r] = psi[std::abs(r - c)];
        ComplexVec f = dft_unitary(col);
        for (int r = 0; r < n; ++r)
            m1(r, c) = f[r];
    }
    // R = (1/N) M1 D^H = (1/N) (D M1^H)^H; column c of M1^H is the conjugated row c of M1.
    ComplexMat r_pp(n, n);
    const double inv_n = 1.0 / n;
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r)
            col[r] = std::conj(m1(c, r));
        ComplexVec f = dft_unitary(col);
        for (int r = 0; r < n; ++r)
            r_pp(c, r) = std::conj(f[r]) * inv_n;
    }
    return r_pp;
}

PnCorrelation PnCorrelation::compute(const OscillatorSpec& spec, int n, int max_offset)
{
    spec.validate();
    if (n < 2 || max_offset < 0)
        throw std::invalid_argument("PnCorrelation: N must be >= 2 and max_offset >= 0");
    const double decay = std::numbers::pi * spec.beta_hz * spec.sample_period_s;
    std::vector<double> psi(n);
    for (int t = 0; t < n; ++t)
        psi[t] = std::exp(-decay * t);

    PnCorrelation out;
    out.n_ = n;
    out.max_offset_ = max_offset;
    out.diagonals_.resize(2 * max_offset + 1);

    const double scale = std::sqrt(static_cast<double>(n)) / (static_cast<double>(n) * n);
    ComplexVec folded(n);
    for (int d = -max_offset; d <= max_offset; ++d) {
        std::fill(folded.begin(), folded.end(), cplx{});
        const bool flat = wrap(d, n) == 0;
        const cplx w = unit_root(d, 1, n);
        for (int t = -(n - 1); t <= n - 1; ++t) {
            const int lo = std::max(0, -t);
            const int hi = std::min(n, n - t);
            cplx s;
            if (flat)
                s = static_cast<double>(hi - lo);
            else
                s = (unit_root(d, lo, n) - unit_root(d, hi, n)) / (1.0 - w);
            folded[wrap(t, n)] += psi[std::abs(t)] * s;
        }
        ComplexVec f = dft_unitary(folded);
        for (auto& v : f)
            v *= scale;
        out.diagonals_[d + max_offset] = std::move(f);
    }
    return out;
}

PnCorrelation PnCorrelation::from_matrix(const ComplexMat& r_pp, int max_offset)
{
    const int n = static_cast<int>(r_pp.rows());
    if (n < 2 || r_pp.cols() != r_pp.rows() || max_offset < 0)
        throw std::invalid_argument("PnCorrelation: expected a square matrix");
    PnCorrelation out;
    out.n_ = n;
    out.max_offset_ = max_offset;
    out.diagonals_.resize(2 * max_offset + 1);
    for (int d = -max_offset; d <= max_offset; ++d) {
        ComplexVec diag(n);
        for (int k = 0; k < n; ++k)
            diag[k] = r_pp(k, wrap(k + d, n));
        out.diagonals_[d + max_offset] = std::move(diag);
    }
    return out;
}

cplx PnCorrelation::at(int k, int l) const
{
    int d = wrap(l - k, n_);
    if (d > n_ / 2)
        d -= n_;
    if (d > max_offset_ && d - n_ >= -max_offset_)
        d -= n_;
    if (d < -max_offset_ && d + n_ <= max_offset_)
        d += n_;
    if (std::abs(d) > max_offset_)
        throw std::out_of_range("PnCorrelation: offset outside the stored band");
    return diagonals_[d + max_offset_][wrap(k, n_)];
}

namespace {

void check_band(const PnCorrelation& r, int gamma)
{
    check_gamma(r.size(), gamma);
    if (r.max_offset() < 2 * gamma && r.max_offset() < r.size() / 2)
        throw std::invalid_argument("correlation band too narrow for the approximation order");
}

PnCorrelation band_of(const ComplexMat& r_pp, int gamma)
{
    const int n = static_cast<int>(r_pp.rows());
    check_gamma(n, gamma);
    return PnCorrelation::from_matrix(r_pp, std::min(2 * gamma, n / 2));
}

} // namespace

ComplexMat extract_R_pp_gamma(const PnCorrelation& r, int gamma)
{
    check_band(r, gamma);
    const auto idx = dominant_indices(r.size(), gamma);
    const std::size_t np = idx.size();
    ComplexMat out(np, np);
    for (std::size_t a = 0; a < np; ++a)
        for (std::size_t b = 0; b < np; ++b)
            out(a, b) = r.at(idx[a], idx[b]);
    return out;
}

ComplexMat compute_R_ici_gamma(const PnCorrelation& r, int gamma)
{
    check_band(r, gamma);
    const int n = r.size();
    const int n_a = gamma + 1;
    const int n_b = 3 * gamma + 1;
    if (n - (n_a + n_b) <= 0)
        throw std::invalid_argument("approximation order too large for N");
    const int np = 2 * gamma + 1;
    ComplexMat out(np, np);
    for (int k = 0; k < np; ++k)
        for (int l = 0; l < np; ++l) {
            cplx s = 0.0;
            for (int i = n_a + k; i <= n - n_b + k; ++i)
                s += r.at(wrap(i, n), wrap(i + l - k, n));
            out(k, l) = s;
        }
    return out;
}

double p_dom(const PnCorrelation& r, int gamma) { return extract_R_pp_gamma(r, gamma).trace().real(); }

ComplexMat extract_R_pp_gamma(const ComplexMat& r_pp, int gamma) { return extract_R_pp_gamma(band_of(r_pp, gamma), gamma); }
ComplexMat compute_R_ici_gamma(const ComplexMat& r_pp, int gamma) { return compute_R_ici_gamma(band_of(r_pp, gamma), gamma); }
double p_dom(const ComplexMat& r_pp, int gamma) { return p_dom(band_of(r_pp, gamma), gamma); }

PnStats make_pn_stats(const OscillatorSpec& spec, int n, int gamma)
{
    check_gamma(n, gamma);
    PnStats s;
    s.n = n;
    s.gamma = gamma;
    s.r_pp = std::make_shared<const PnCorrelation>(PnCorrelation::compute(spec, n, std::min(2 * gamma, n / 2)));
    s.r_pp_gamma = extract_R_pp_gamma(*s.r_pp, gamma);
    s.r_ici_gamma = compute_R_ici_gamma(*s.r_pp, gamma);
    s.p_dom = s.r_pp_gamma.trace().real();
    return s;
}

} // namespace pnofdm
