#include "hpf/ext_form.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "hpf/parallel.hpp"

namespace hpf {

namespace {

// Pair loops below this many products always run single-threaded, which
// keeps small cases (and their floating-point summation order) identical
// across thread counts.
constexpr std::int64_t kParallelCutoff = 1 << 16;

using TermMap = std::unordered_map<std::uint64_t, cplx>;

void append_map(TermMap& dst, const TermMap& src) {
    for (const auto& [k, v] : src) dst[k] += v;
}

ExtForm map_to_form(int dim, int degree, TermMap& acc) {
    std::vector<ExtForm::Term> terms;
    terms.reserve(acc.size());
    for (auto& [k, v] : acc)
        if (std::abs(v) >= kCoeffDropTol) terms.emplace_back(k, v);
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return ExtForm::from_terms(dim, degree, std::move(terms));
}

bool identical_forms(const ExtForm& a, const ExtForm& b) {
    if (a.dim() != b.dim() || a.degree() != b.degree() || a.size() != b.size()) return false;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    for (std::size_t i = 0; i < ta.size(); ++i)
        if (ta[i].first != tb[i].first || ta[i].second != tb[i].second) return false;
    return true;
}

}  // namespace

ExtForm ExtForm::scalar(int dim, cplx value) {
    ExtForm f(dim, 0);
    if (std::abs(value) >= kCoeffDropTol) f.terms_.emplace_back(0, value);
    return f;
}

ExtForm ExtForm::from_terms(int dim, int degree, std::vector<Term> terms) {
    ExtForm f(dim, degree);
    const std::uint64_t limit =
        (dim == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << dim) - 1;
    for (const auto& [mask, value] : terms) {
        (void)value;
        if ((mask & ~limit) != 0) throw std::invalid_argument("ExtForm: key exceeds dimension");
        if (std::popcount(mask) != degree) throw std::invalid_argument("ExtForm: key degree mismatch");
    }
    f.terms_ = std::move(terms);
    f.normalize();
    return f;
}

cplx ExtForm::coefficient(std::uint64_t mask) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                               [](const Term& t, std::uint64_t m) { return t.first < m; });
    if (it != terms_.end() && it->first == mask) return it->second;
    return {};
}

void ExtForm::add_term(const MultiIndex& t, cplx value) {
    if (t.dim() != dim_) throw std::invalid_argument("ExtForm: dimension mismatch");
    if (t.degree() != degree_) throw std::invalid_argument("ExtForm: degree mismatch");
    auto it = std::lower_bound(terms_.begin(), terms_.end(), t.mask(),
                               [](const Term& a, std::uint64_t m) { return a.first < m; });
    if (it != terms_.end() && it->first == t.mask()) {
        it->second += value;
        if (std::abs(it->second) < kCoeffDropTol) terms_.erase(it);
    } else if (std::abs(value) >= kCoeffDropTol) {
        terms_.insert(it, {t.mask(), value});
    }
}

ExtForm& ExtForm::operator+=(const ExtForm& o) {
    if (o.dim_ != dim_ || o.degree_ != degree_)
        throw std::invalid_argument("ExtForm: shape mismatch in +=");
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    merged.insert(merged.end(), terms_.begin(), terms_.end());
    merged.insert(merged.end(), o.terms_.begin(), o.terms_.end());
    terms_ = std::move(merged);
    normalize();
    return *this;
}

ExtForm& ExtForm::operator*=(cplx s) {
    for (auto& [k, v] : terms_) v *= s;
    std::erase_if(terms_, [](const Term& t) { return std::abs(t.second) < kCoeffDropTol; });
    return *this;
}

double ExtForm::max_abs() const noexcept {
    double m = 0;
    for (const auto& [k, v] : terms_) m = std::max(m, std::abs(v));
    return m;
}

void ExtForm::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (!merged.empty() && merged.back().first == t.first)
            merged.back().second += t.second;
        else
            merged.push_back(t);
    }
    std::erase_if(merged, [](const Term& t) { return std::abs(t.second) < kCoeffDropTol; });
    terms_ = std::move(merged);
}

ExtForm wedge(const ExtForm& a, const ExtForm& b, int threads) {
    if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
    const int dim = a.dim();
    const int degree = a.degree() + b.degree();
    if (degree > dim) throw std::invalid_argument("wedge: degree overflow");

    const auto& ta = a.terms();
    const auto& tb = b.terms();

    // a ^ a with even positive degree: the (S,T) and (T,S) terms coincide,
    // so only pairs S < T are accumulated and the result doubled (the
    // scale by 2 is exact).  Odd-degree squares cancel pairwise.
    const bool symmetric = a.degree() > 0 && identical_forms(a, b);
    if (symmetric && a.degree() % 2 == 1) return ExtForm(dim, degree);

    const std::int64_t pair_count = std::int64_t(ta.size()) * std::int64_t(tb.size());
    const int workers = (pair_count >= kParallelCutoff) ? std::max(1, threads) : 1;

    auto accumulate_range = [&](std::int64_t lo, std::int64_t hi, TermMap& acc) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const auto& [sm, sc] = ta[static_cast<std::size_t>(i)];
            const std::size_t j0 = symmetric ? static_cast<std::size_t>(i) + 1 : 0;
            for (std::size_t j = j0; j < tb.size(); ++j) {
                const auto& [tm, tc] = tb[j];
                if (sm & tm) continue;
                const double sign = cross_inversions_parity(sm, tm) ? -1.0 : 1.0;
                acc[sm | tm] += sign * (sc * tc);
            }
        }
    };

    TermMap acc;
    if (workers <= 1) {
        acc.reserve(64);
        accumulate_range(0, std::int64_t(ta.size()), acc);
    } else {
        std::vector<TermMap> partial(static_cast<std::size_t>(workers));
        parallel_for_chunks(std::int64_t(ta.size()), workers,
                            [&](int chunk, std::int64_t lo, std::int64_t hi) {
                                accumulate_range(lo, hi, partial[static_cast<std::size_t>(chunk)]);
                            });
        for (auto& p : partial) append_map(acc, p);
    }

    ExtForm out = map_to_form(dim, degree, acc);
    if (symmetric) out *= 2.0;
    return out;
}

ExtForm wedge_power(const ExtForm& a, int n, int threads) {
    if (n < 0) throw std::invalid_argument("wedge_power: negative power");
    if (std::int64_t(n) * a.degree() > a.dim()) throw std::invalid_argument("wedge_power: degree overflow");
    ExtForm r = ExtForm::scalar(a.dim(), 1.0);
    for (int i = 0; i < n; ++i) r = wedge(r, a, threads);
    return r;
}

cplx hyperpfaffian(const ExtForm& a, int threads) {
    const int k = a.degree();
    const int dim = a.dim();
    if (k <= 0 || dim % k != 0)
        throw std::invalid_argument("hyperpfaffian: degree must divide dimension");
    const int n = dim / k;
    const ExtForm power = wedge_power(a, n, threads);
    double factorial = 1.0;
    for (int i = 2; i <= n; ++i) factorial *= i;
    const std::uint64_t vol = (dim == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << dim) - 1;
    return power.coefficient(vol) / factorial;
}

}  // namespace hpf
