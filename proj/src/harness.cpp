// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#include "symapprox/harness.hpp"

#include "symapprox/detail/numeric.hpp"
#include "symapprox/detail/parallel.hpp"
#include "symapprox/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace symapprox {

SampleSet sample_configurations(const DomainSpec& domain, std::size_t count, std::uint64_t seed) {
    domain.validate();
    if (count == 0) throw ArgumentError("sample count must be at least 1");
    const std::size_t n = domain.num_points;
    const std::size_t d = domain.d;
    const detail::CounterRng rng(seed);
    SampleSet set{domain, seed, {}};
    set.configurations.reserve(count);
    std::vector<double> coords(n * d);
    for (std::size_t s = 0; s < count; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t a = 0; a < d; ++a) {
                const double u = rng.uniform_at((s * n + i) * d + a);
                coords[i * d + a] = domain.lo + (domain.hi - domain.lo) * u;
            }
        }
        set.configurations.emplace_back(n, d, coords);
    }
    return set;
}

double default_fd_step(const DomainSpec& domain) { return 1e-4 * (domain.hi - domain.lo); }

double gradient_bound_estimate(const Evaluator& f, const SampleSet& samples, double h, unsigned threads) {
    const DomainSpec& domain = samples.domain;
    if (!(h > 0.0) || !(domain.hi - domain.lo > 2.0 * h)) {
        throw ArgumentError("finite-difference step must satisfy 0 < 2h < hi - lo");
    }
    std::vector<double> norms(samples.count());
    detail::parallel_for(samples.count(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            const Configuration& x = samples.configurations[s];
            std::vector<double> base(x.coords().begin(), x.coords().end());
            for (auto& c : base) c = std::clamp(c, domain.lo + h, domain.hi - h);
            std::vector<double> probe = base;
            double norm2 = 0.0;
            for (std::size_t k = 0; k < base.size(); ++k) {
                probe[k] = base[k] + h;
                const double up = f(Configuration(x.size(), x.dim(), probe));
                probe[k] = base[k] - h;
                const double down = f(Configuration(x.size(), x.dim(), probe));
                probe[k] = base[k];
                const double q = (up - down) / (2.0 * h);
                if (!std::isfinite(q)) {
                    throw EvaluationError("non-finite difference quotient at sample " + std::to_string(s) +
                                          ", coordinate " + std::to_string(k));
                }
                norm2 += q * q;
            }
            norms[s] = std::sqrt(norm2);
        }
    });
    return norms.empty() ? 0.0 : *std::max_element(norms.begin(), norms.end());
}

SupError sup_error(const Evaluator& exact, const Evaluator& approx, const SampleSet& samples, unsigned threads) {
    std::vector<double> errors(samples.count());
    detail::parallel_for(samples.count(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            const Configuration& x = samples.configurations[s];
            const double e = std::fabs(exact(x) - approx(x));
            if (!std::isfinite(e)) throw EvaluationError("non-finite deviation at sample " + std::to_string(s));
            errors[s] = e;
        }
    });
    SupError r;
    std::size_t best = 0;
    for (std::size_t s = 0; s < errors.size(); ++s) {
        if (errors[s] > errors[best]) best = s;
    }
    if (!errors.empty()) {
        r.value = errors[best];
        r.argmax = samples.configurations[best];
    }
    return r;
}

Permutation random_permutation(std::size_t n, detail::RngStream& rng) {
    std::vector<std::size_t> images(n);
    std::iota(images.begin(), images.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(images[i - 1], images[j]);
    }
    return Permutation(std::move(images));
}

double invariance_suite(const Evaluator& f, const SampleSet& samples, std::size_t n_perms, InvarianceMode mode,
                        std::uint64_t seed, unsigned threads) {
    if (n_perms == 0) throw ArgumentError("invariance suite needs n_perms >= 1");
    std::vector<double> residuals(samples.count());
    const detail::CounterRng root(seed);
    detail::parallel_for(samples.count(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            detail::RngStream rng(root.split(s).seed());
            const Configuration& x = samples.configurations[s];
            const double base = f(x);
            double worst = 0.0;
            for (std::size_t p = 0; p < n_perms; ++p) {
                const Permutation sigma = random_permutation(x.size(), rng);
                const double expected = mode == InvarianceMode::antisym && parity(sigma) < 0 ? -base : base;
                const double r = std::fabs(f(permute(x, sigma)) - expected);
                if (!(r <= worst)) worst = r;
            }
            residuals[s] = worst;
        }
    });
    double worst = 0.0;
    for (double r : residuals) {
        if (!(r <= worst)) worst = r;
    }
    return worst;
}

SweepResult convergence_sweep(const TargetFunction& f, ApproxKind kind, const DomainSpec& domain,
                              const BuildParams& params, const std::vector<double>& deltas,
                              const SampleSet& samples, double gradient_bound) {
    if (deltas.size() < 3) throw ArgumentError("convergence sweep needs at least three deltas");
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        if (!(deltas[k] > 0.0) || (k > 0 && !(deltas[k] < deltas[k - 1]))) {
            throw ArgumentError("sweep deltas must be positive and strictly descending");
        }
    }
    SweepResult result;
    const Evaluator exact = f.evaluator();
    for (double delta : deltas) {
        const auto start = std::chrono::steady_clock::now();
        const std::string where = " (delta = " + detail::decimal17(delta) + ")";
        std::optional<Approximator> approx;
        try {
            approx.emplace(build_approximator(kind, f, LatticeSpec::for_domain(domain, delta), domain.num_points, params));
        } catch (const CapacityError& e) {
            throw CapacityError(e.what() + where, e.required());
        } catch (const BuildError& e) {
            throw BuildError(e.what() + where);
        }
        const Approximator& a = *approx;
        SweepRow row;
        row.delta = delta;
        row.sup_error = sup_error(exact, [&](const Configuration& x) { return a(x); }, samples, params.threads).value;
        row.bound = error_budget(delta, domain.num_points, domain.d, gradient_bound).bound;
        row.wedge_count = a.wedge_count();
        row.m = a.feature_count();
        row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        result.rows.push_back(row);
    }
    const bool degenerate = std::any_of(result.rows.begin(), result.rows.end(),
                                        [](const SweepRow& r) { return r.sup_error <= 1e-12; });
    if (!degenerate) {
        const double n = static_cast<double>(result.rows.size());
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (const auto& r : result.rows) {
            const double lx = std::log(r.delta);
            const double ly = std::log(r.sup_error);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        result.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return result;
}

double cauchy_factor_check(const Evaluator& f, const SampleSet& samples, double min_gap, std::size_t n_perms,
                           std::uint64_t seed) {
    if (samples.domain.d != 1) throw ArgumentError("Cauchy factorization check requires d = 1");
    if (n_perms == 0) throw ArgumentError("Cauchy factorization check needs n_perms >= 1");
    const auto factor = [&](const Configuration& x) {
        std::vector<double> ys(x.coords().begin(), x.coords().end());
        double v = 1.0;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            for (std::size_t j = i + 1; j < ys.size(); ++j) v *= ys[i] - ys[j];
        }
        return f(x) / v;
    };
    const detail::CounterRng root(seed);
    double worst = 0.0;
    std::size_t kept = 0;
    for (std::size_t s = 0; s < samples.count(); ++s) {
        const Configuration& x = samples.configurations[s];
        bool separated = true;
        for (std::size_t i = 0; i < x.size() && separated; ++i) {
            for (std::size_t j = i + 1; j < x.size(); ++j) {
                if (std::fabs(x.coord(i, 0) - x.coord(j, 0)) < min_gap) {
                    separated = false;
                    break;
                }
            }
        }
        if (!separated) continue;
        ++kept;
        detail::RngStream rng(root.split(s).seed());
        const double u = factor(x);
        for (std::size_t p = 0; p < n_perms; ++p) {
            const double r = std::fabs(factor(permute(x, random_permutation(x.size(), rng))) - u);
            if (!(r <= worst)) worst = r;
        }
    }
    if (kept == 0) throw ArgumentError("no sample has all pairwise gaps >= min_gap");
    return worst;
}

bool VerificationReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

bool within_bound(double sup_error, double bound) noexcept { return sup_error <= bound + 1e-12; }

} // namespace symapprox
