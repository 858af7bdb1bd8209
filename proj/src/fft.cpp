#include "nsch/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace nsch {

namespace {

// One pair of plans per grid shape. Plan creation is serialized (FFTW
// requirement); execution through the new-array interface is thread-safe.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

class PlanCache {
  public:
    static PlanPair& get(int nx, int ny) {
        static PlanCache cache;
        std::lock_guard<std::mutex> lock(cache.mutex_);
        auto key = std::make_pair(nx, ny);
        auto it = cache.plans_.find(key);
        if (it != cache.plans_.end()) return it->second;

        std::vector<double> real(static_cast<std::size_t>(nx) * ny);
        std::vector<std::complex<double>> cplx(static_cast<std::size_t>(ny) * (nx / 2 + 1));
        PlanPair p;
        // FFTW_ESTIMATE keeps the algorithm choice deterministic across runs.
        p.fwd = fftw_plan_dft_r2c_2d(ny, nx, real.data(),
                                     reinterpret_cast<fftw_complex*>(cplx.data()),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
        p.bwd = fftw_plan_dft_c2r_2d(ny, nx, reinterpret_cast<fftw_complex*>(cplx.data()),
                                     real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p.fwd || !p.bwd) throw std::runtime_error("fft: plan creation failed");
        return cache.plans_.emplace(key, p).first->second;
    }

  private:
    PlanCache() = default;
    ~PlanCache() {
        for (auto& [key, p] : plans_) {
            fftw_destroy_plan(p.fwd);
            fftw_destroy_plan(p.bwd);
        }
    }
    std::mutex mutex_;
    std::map<std::pair<int, int>, PlanPair> plans_;
};

} // namespace

std::size_t spectrum_size(const Grid& g) {
    return static_cast<std::size_t>(g.ny()) * (g.nx() / 2 + 1);
}

Spectrum fft_forward(const Grid& g, const std::vector<double>& values) {
    if (values.size() != g.size()) throw std::invalid_argument("fft_forward: size mismatch");
    PlanPair& plans = PlanCache::get(g.nx(), g.ny());
    std::vector<double> in(values);
    Spectrum out(spectrum_size(g));
    fftw_execute_dft_r2c(plans.fwd, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<double> fft_backward(const Grid& g, const Spectrum& coeffs) {
    if (coeffs.size() != spectrum_size(g))
        throw std::invalid_argument("fft_backward: size mismatch");
    PlanPair& plans = PlanCache::get(g.nx(), g.ny());
    Spectrum in(coeffs); // c2r destroys its input
    std::vector<double> out(g.size());
    fftw_execute_dft_c2r(plans.bwd, reinterpret_cast<fftw_complex*>(in.data()), out.data());
    const double scale = 1.0 / (static_cast<double>(g.nx()) * g.ny());
    for (double& v : out) v *= scale;
    return out;
}

} // namespace nsch
