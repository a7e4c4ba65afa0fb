#include "cavgate/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace cavgate {

namespace {

// FFTW plan creation is not thread-safe; new-array execution is.
std::mutex g_plan_mutex;

fftw_plan plan_for(std::size_t n, int sign) {
    static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto it = cache.find({n, sign});
    if (it != cache.end()) return it->second;
    fftw_complex* buf = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    cache.emplace(std::make_pair(n, sign), p);
    return p;
}

std::vector<std::complex<double>> run(const std::vector<std::complex<double>>& x, int sign) {
    std::vector<std::complex<double>> out(x.size());
    if (x.empty()) return out;
    fftw_plan p = plan_for(x.size(), sign);
    // std::complex<double> is layout-compatible with fftw_complex.
    auto* in_ptr = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(x.data()));
    auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(p, in_ptr, out_ptr);
    return out;
}

} // namespace

std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& x) {
    return run(x, FFTW_FORWARD);
}

std::vector<std::complex<double>> fft_inverse(const std::vector<std::complex<double>>& x) {
    auto out = run(x, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(x.size());
    for (auto& v : out) v *= scale;
    return out;
}

} // namespace cavgate
