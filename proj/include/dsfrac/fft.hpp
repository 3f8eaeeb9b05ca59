#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <vector>

#include <fftw3.h>

namespace dsfrac::detail {

// Cached in-place c2c 3D plans, one pair per grid size. Plan creation is the
// only non-thread-safe part of FFTW, so it is serialized; execution uses the
// new-array interface and may run concurrently. FFTW_ESTIMATE keeps planning
// deterministic (no timing-dependent algorithm choice), FFTW_UNALIGNED lets
// plans run on any std::vector buffer.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    void execute(std::vector<std::complex<double>>& data, int n, int sign) {
        fftw_plan plan = get_plan(n, sign);
        auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
        fftw_execute_dft(plan, ptr, ptr);
    }

private:
    PlanCache() = default;
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }
    PlanCache(const PlanCache&) = delete;
    PlanCache& operator=(const PlanCache&) = delete;

    fftw_plan get_plan(int n, int sign) {
        std::scoped_lock lock(mutex_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<std::complex<double>> scratch(
            static_cast<std::size_t>(n) * n * n);
        auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft_3d(n, n, n, ptr, ptr, sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

// Unnormalized in-place 3D DFT: sign=FFTW_FORWARD sums e^{-2*pi*i*jk/n},
// sign=FFTW_BACKWARD sums e^{+2*pi*i*jk/n}.
inline void fft3(std::vector<std::complex<double>>& data, int n, int sign) {
    PlanCache::instance().execute(data, n, sign);
}

} // namespace dsfrac::detail
