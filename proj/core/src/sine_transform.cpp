#include "heatlab/sine_transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace heatlab {
namespace {

// FFTW_ESTIMATE keeps plan selection independent of timing, so outputs are
// bit-reproducible from run to run.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [n, p] : plans_) fftw_destroy_plan(p);
    }

    fftw_plan get(std::size_t n) {
        std::lock_guard lock(mu_);
        auto it = plans_.find(n);
        if (it != plans_.end()) return it->second;
        std::vector<double> a(n), b(n);
        fftw_plan p = fftw_plan_r2r_1d(static_cast<int>(n), a.data(), b.data(), FFTW_RODFT00,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
        plans_.emplace(n, p);
        return p;
    }

private:
    std::mutex mu_;
    std::map<std::size_t, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

}  // namespace

void dst1(const double* in, double* out, std::size_t n) {
    if (n == 0) return;
    fftw_plan p = cache().get(n);
    // new-array execute is thread safe; fftw only reads the const input
    fftw_execute_r2r(p, const_cast<double*>(in), out);
}

}  // namespace heatlab
