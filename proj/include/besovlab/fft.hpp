#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <new>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace besov {

/// allocator returning FFTW-aligned storage so cached plans can run on any buffer
template <class T>
struct FftwAllocator {
    using value_type = T;
    FftwAllocator() = default;
    template <class U>
    FftwAllocator(const FftwAllocator<U>&) {}
    T* allocate(std::size_t n) {
        if (n == 0) return nullptr;
        void* p = fftw_malloc(n * sizeof(T));
        if (!p) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) { fftw_free(p); }
    template <class U>
    bool operator==(const FftwAllocator<U>&) const { return true; }
};

using CVec = std::vector<std::complex<double>, FftwAllocator<std::complex<double>>>;

namespace fft {

enum class Sign { Forward = FFTW_FORWARD, Backward = FFTW_BACKWARD };

namespace detail {
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache c;
        return c;
    }
    // planner calls are not thread safe in FFTW; execution with new-array API is
    // ESTIMATE planning leaves `buf` untouched
    fftw_plan get(int d, std::size_t n, Sign sign, fftw_complex* buf) {
        std::lock_guard lock(mu_);
        auto key = std::make_tuple(d, n, int(sign));
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<int> dims(d, int(n));
        fftw_plan p = fftw_plan_dft(d, dims.data(), buf, buf, int(sign), FFTW_ESTIMATE);
        if (!p) throw std::runtime_error("FFTW planning failed");
        plans_.emplace(key, p);
        return p;
    }
    ~PlanCache() {
        for (auto& [k, p] : plans_) fftw_destroy_plan(p);
    }

  private:
    std::mutex mu_;
    std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans_;
};
}  // namespace detail

/// unnormalized in-place DFT over a row-major n^d array
inline void transform(CVec& data, int d, std::size_t n, Sign sign) {
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan p = detail::PlanCache::instance().get(d, n, sign, buf);
    fftw_execute_dft(p, buf, buf);
}

}  // namespace fft
}  // namespace besov
