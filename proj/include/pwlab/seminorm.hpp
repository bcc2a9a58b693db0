#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "pwlab/errors.hpp"
#include "pwlab/estimators.hpp"
#include "pwlab/grid.hpp"
#include "pwlab/log_magnitude.hpp"
#include "pwlab/parallel.hpp"
#include "pwlab/signal.hpp"
#include "pwlab/transforms.hpp"
#include "pwlab/weights.hpp"

namespace pwlab {

/// Families of S_omega seminorms in L^p form.
enum class SeminormCondition { A, B, C, D, E, F, G, H };

inline const char* conditionName(SeminormCondition c) {
    static const char* names[] = {"a'", "b'", "c'", "d'", "e'", "f'", "g'", "h'"};
    return names[static_cast<int>(c)];
}

inline SeminormCondition parseCondition(std::string s) {
    if (!s.empty() && (s.back() == '\'')) s.pop_back();
    if (s.size() == 1 && s[0] >= 'a' && s[0] <= 'h') return static_cast<SeminormCondition>(s[0] - 'a');
    throw ParameterError("unknown seminorm condition '" + s + "'");
}

struct SeminormOptions {
    int part = 1;                            // i) or ii) for a', b', c', d'
    int fixedOrder = 0;                      // |beta| in d'(i), |alpha| in d'(ii)
    double muScale = 1.0;                    // mu = muScale * lambda in e', g'
    const SampledFunction* window = nullptr; // required by h'
};

namespace detail {

inline double logMonomial(const double* c, const MultiIndex& b) {
    double s = 0.0;
    for (std::size_t a = 0; a < b.size(); ++a)
        if (b[a] > 0) s += b[a] * std::log(std::abs(c[a]));
    return s;
}

// log ||e^{strength omega(|x|)} x^beta g||_{L^r} + shift.
inline double monomialNorm(const GridSamples& g, double shift, const MultiIndex& beta, double r,
                           const WeightFunction& w, double strength) {
    LogLpAccumulator acc(r, std::log(g.grid.cellVolume()));
    double c[2];
    for (std::size_t i = 0; i < g.size(); ++i) {
        double a = std::abs(g[i]);
        if (a == 0.0) continue;
        g.coords(i, c);
        double t = std::log(a) + logMonomial(c, beta);
        if (strength != 0.0) t += strength * w(g.euclidCoord(i));
        acc.add(t);
    }
    return acc.result() + shift;
}

inline double conjugatePenalty(const WeightFunction& w, double lambda, int order) {
    return scaledYoungConjugate(w, lambda, static_cast<double>(order));
}

}  // namespace detail

/// Running sup per lambda of a truncated seminorm family; column n covers all terms of order <= n.
/// Values are natural logs; terms whose conjugate penalty is +inf are skipped.
inline DiagnosticTable seminormProfile(const SampledFunction& f, const WeightFunction& w, SeminormCondition cond,
                                       double p, double q, const std::vector<double>& lambdas, int orderCap,
                                       const SeminormOptions& opt = {}) {
    requireExponent(p, "seminormProfile");
    requireExponent(q, "seminormProfile");
    if (orderCap < 0 || orderCap > kDefaultMaxOrder) throw ParameterError("seminormProfile: order cap out of range");
    if (opt.part != 1 && opt.part != 2) throw ParameterError("seminormProfile: part must be 1 or 2");
    const bool zeroLambdaOk = cond == SeminormCondition::A || cond == SeminormCondition::B ||
                              cond == SeminormCondition::C || cond == SeminormCondition::H;
    for (double l : lambdas) {
        if (l < 0.0 || (l == 0.0 && !zeroLambdaOk)) throw ParameterError("seminormProfile: lambda out of range");
    }
    if (cond == SeminormCondition::H && opt.window == nullptr)
        throw ParameterError("seminormProfile: condition h' needs a window");

    const int d = f.grid.dim;
    const bool orderFree = cond == SeminormCondition::C || cond == SeminormCondition::H;
    const int cols = orderFree ? 1 : orderCap + 1;
    DiagnosticTable t;
    t.title = std::string("seminorm ") + conditionName(cond);
    t.parameterName = "lambda";
    t.abscissaName = "order";
    for (int n = 0; n < cols; ++n) t.abscissa.push_back(n);
    const double ninf = -std::numeric_limits<double>::infinity();
    // terms[n][li]: sup over terms of exact order n.
    std::vector<std::vector<double>> terms(cols, std::vector<double>(lambdas.size(), ninf));

    const bool needDerivs = cond == SeminormCondition::A ? opt.part == 1
                                                         : (cond == SeminormCondition::D || cond == SeminormCondition::E ||
                                                            cond == SeminormCondition::F || cond == SeminormCondition::G);
    Spectrum Ff(f.grid.frequencyGrid());
    if (f.maxAbs() > 0.0 && (needDerivs || opt.part == 2 || cond == SeminormCondition::H))
        Ff = filterSpectrum(forwardFT(f));
    // D^alpha f for every |alpha| <= orderCap, flattened by order.
    std::vector<std::vector<MultiIndex>> alphas(orderCap + 1);
    std::vector<std::vector<ScaledFunction>> derivs(orderCap + 1);
    if (needDerivs && f.maxAbs() > 0.0) {
        for (int n = 0; n <= orderCap; ++n) alphas[n] = detail::multiIndices(d, n);
        parallelFor(static_cast<std::size_t>(orderCap + 1), [&](std::size_t n) {
            for (const auto& a : alphas[n]) derivs[n].push_back(derivativeScaled(Ff, a));
        });
    }
    auto dnorm = [&](int n, std::size_t k, const MultiIndex& beta, double r, double strength) {
        const ScaledFunction& g = derivs[n][k];
        return detail::monomialNorm(g.f, g.exponent * std::numbers::ln2, beta, r, w, strength);
    };

    std::optional<TimeFreqField> V;
    if (cond == SeminormCondition::H && f.maxAbs() > 0.0) V = stft(f, *opt.window);

    if (f.maxAbs() > 0.0) {
        const MultiIndex zero(d, 0);
        for (std::size_t li = 0; li < lambdas.size(); ++li) {
            const double lam = lambdas[li];
            const double mu = opt.muScale * lam;
            auto bump = [&](int n, double v) { terms[n][li] = std::max(terms[n][li], v); };
            switch (cond) {
                case SeminormCondition::A:
                    for (int n = 0; n <= orderCap; ++n) {
                        if (opt.part == 1) {
                            for (std::size_t k = 0; k < derivs[n].size(); ++k) bump(n, dnorm(n, k, zero, p, lam));
                        } else {
                            // D_xi^alpha u-hat = F[(-x)^alpha u]
                            for (const auto& a : detail::multiIndices(d, n)) {
                                SampledFunction g = f;
                                double c[2];
                                double mx = 0.0;
                                for (std::size_t i = 0; i < g.size(); ++i) {
                                    g.coords(i, c);
                                    double m = 1.0;
                                    for (int ax = 0; ax < d; ++ax) m *= std::pow(-c[ax], a[ax]);
                                    g[i] *= m;
                                    mx = std::max(mx, std::abs(g[i]));
                                }
                                if (mx == 0.0) continue;
                                Spectrum G(f.grid.frequencyGrid(), detail::forwardSamples(f.grid, g.samples));
                                bump(n, detail::monomialNorm(G, 0.0, zero, q, w, lam));
                            }
                        }
                    }
                    break;
                case SeminormCondition::B:
                    for (int n = 0; n <= orderCap; ++n)
                        for (const auto& a : detail::multiIndices(d, n))
                            bump(n, opt.part == 1 ? detail::monomialNorm(f, 0.0, a, p, w, lam)
                                                  : detail::monomialNorm(Ff, 0.0, a, q, w, lam));
                    break;
                case SeminormCondition::C:
                    bump(0, opt.part == 1 ? detail::monomialNorm(f, 0.0, zero, p, w, lam)
                                          : detail::monomialNorm(Ff, 0.0, zero, q, w, lam));
                    break;
                case SeminormCondition::D:
                    for (int n = 0; n <= orderCap; ++n) {
                        double pen = detail::conjugatePenalty(w, lam, n);
                        if (!std::isfinite(pen)) continue;
                        if (opt.part == 1) {
                            if (opt.fixedOrder > orderCap) throw ParameterError("fixed order exceeds the cap");
                            for (const auto& beta : detail::multiIndices(d, opt.fixedOrder))
                                for (std::size_t k = 0; k < derivs[n].size(); ++k)
                                    bump(n, dnorm(n, k, beta, p, 0.0) - pen);
                        } else {
                            if (opt.fixedOrder > orderCap) throw ParameterError("fixed order exceeds the cap");
                            for (const auto& beta : detail::multiIndices(d, n))
                                for (std::size_t k = 0; k < derivs[opt.fixedOrder].size(); ++k)
                                    bump(n, dnorm(opt.fixedOrder, k, beta, q, 0.0) - pen);
                        }
                    }
                    break;
                case SeminormCondition::E:
                case SeminormCondition::F:
                    for (int na = 0; na <= orderCap; ++na)
                        for (int nb = 0; na + nb <= orderCap; ++nb) {
                            double pen = cond == SeminormCondition::E
                                             ? detail::conjugatePenalty(w, lam, na) + detail::conjugatePenalty(w, mu, nb)
                                             : detail::conjugatePenalty(w, lam, na + nb);
                            if (!std::isfinite(pen)) continue;
                            for (const auto& beta : detail::multiIndices(d, nb))
                                for (std::size_t k = 0; k < derivs[na].size(); ++k)
                                    bump(na + nb, dnorm(na, k, beta, p, 0.0) - pen);
                        }
                    break;
                case SeminormCondition::G:
                    for (int n = 0; n <= orderCap; ++n) {
                        double pen = detail::conjugatePenalty(w, lam, n);
                        if (!std::isfinite(pen)) continue;
                        for (std::size_t k = 0; k < derivs[n].size(); ++k) bump(n, dnorm(n, k, zero, p, mu) - pen);
                    }
                    break;
                case SeminormCondition::H: {
                    bump(0, mixedLpqNorm(*V, p, q, {}, {}, JointWeight{&w, lam}).log());
                    break;
                }
            }
        }
    }
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
        DiagnosticRow row{lambdas[li], {}};
        double run = ninf;
        for (int n = 0; n < cols; ++n) {
            run = std::max(run, terms[n][li]);
            row.values.push_back(run);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace pwlab
