#include "cmc/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <queue>
#include <string>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "cmc/errors.hpp"

namespace cmc {

void validate(const QuadratureSettings& s) {
    if (!(s.abs_tol > 0.0) || !(s.rel_tol > 0.0) || s.max_subdivisions < 1)
        throw DomainError("quadrature tolerances must be > 0");
}

namespace {

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    double err = 0.0;
    const double v =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err);
    return Panel{a, b, v, err};
}

bool simpson(const std::function<double(double)>& f, double a, double b,
             const QuadratureSettings& s, double& out) {
    // Doubling composite Simpson; Richardson test |S_2n − S_n| / 15.
    int n = 64;
    double h = (b - a) / n;
    double ends = f(a) + f(b);
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < n; ++i) (i % 2 ? odd : even) += f(a + i * h);
    double prev = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
    for (int level = 0; level < 14; ++level) {
        even += odd;
        odd = 0.0;
        n *= 2;
        h = (b - a) / n;
        for (int i = 1; i < n; i += 2) odd += f(a + i * h);
        const double cur = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
        if (std::abs(cur - prev) / 15.0 <= std::max(s.abs_tol, s.rel_tol * std::abs(cur))) {
            out = cur;
            return std::isfinite(cur);
        }
        prev = cur;
    }
    return false;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSettings& s) {
    validate(s);
    if (a == b) return 0.0;
    std::priority_queue<Panel> heap;
    Panel first = gk15(f, a, b);
    double total = first.value, err = first.error;
    heap.push(first);
    int panels = 1;
    while (err > std::max(s.abs_tol, s.rel_tol * std::abs(total))) {
        if (panels >= s.max_subdivisions) {
            double v = 0.0;
            if (simpson(f, a, b, s, v)) return v;
            throw QuadratureError("no convergence on [" + std::to_string(a) + ", " +
                                  std::to_string(b) + "], error estimate " + std::to_string(err));
        }
        const Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel l = gk15(f, worst.a, mid);
        const Panel r = gk15(f, mid, worst.b);
        total += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        ++panels;
        if (!std::isfinite(total)) throw QuadratureError("non-finite integrand");
    }
    // Re-sum to shed the drift of the running updates.
    double sum = 0.0;
    for (; !heap.empty(); heap.pop()) sum += heap.top().value;
    return sum;
}

double integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& breaks,
                        const QuadratureSettings& s) {
    double sum = 0.0;
    for (std::size_t i = 1; i < breaks.size(); ++i) sum += integrate(f, breaks[i - 1], breaks[i], s);
    return sum;
}

double refine_root(const std::function<double(double)>& f, double lo, double hi, double flo,
                   double fhi, double xtol, int max_iter) {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
    auto stop = [xtol](double x, double y) { return std::abs(x - y) <= xtol; };
    const auto [x0, x1] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop, iters);
    return 0.5 * (x0 + x1);
}

unsigned worker_count() {
    if (const char* env = std::getenv("CMC_TUBES_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::size_t failed_at = n;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (i < failed_at) {
                        failed_at = i;
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw DomainError("grid needs at least one point");
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    v.back() = hi;
    return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > 0.0)) throw DomainError("log grid needs positive ends");
    auto v = linspace(std::log(lo), std::log(hi), n);
    for (auto& x : v) x = std::exp(x);
    v.front() = lo;
    v.back() = hi;
    return v;
}

}  // namespace cmc
