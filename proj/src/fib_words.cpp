#include "fibcmv/fib_words.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>
#include <stdexcept>

namespace fibcmv::words {

namespace {

// Golden rotation angle: the fixed point is coded by the rotation by
// alpha = 2 - phi = (3 - sqrt 5)/2, with u_n = a iff {(n+1) alpha} < 1 - alpha.
constexpr double kAlpha = 0.38196601125010515180;

double fract(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0;  // guard against floor rounding at integers
    return f;
}

std::string& prefix_cache() {
    static std::string cache = "a";
    return cache;
}

std::mutex& prefix_mutex() {
    static std::mutex m;
    return m;
}

// Grow the memoized prefix of u to at least n letters.
const std::string& ensure_prefix(long long n, long long cap) {
    if (n > cap)
        throw std::length_error("fixed point prefix request " + std::to_string(n) +
                                " exceeds cap " + std::to_string(cap));
    std::lock_guard<std::mutex> lock(prefix_mutex());
    std::string& u = prefix_cache();
    while (static_cast<long long>(u.size()) < n) {
        std::string next;
        next.reserve(u.size() * 2);
        for (char ch : u) {
            if (ch == kA) {
                next.push_back(kA);
                next.push_back(kB);
            } else {
                next.push_back(kA);
            }
        }
        u = std::move(next);
    }
    return u;
}

void check_letters(std::string_view w) {
    for (char ch : w)
        if (ch != kA && ch != kB)
            throw std::invalid_argument("word contains a letter outside {a, b}");
}

}  // namespace

long long fib_number(int k) {
    if (k < 0) throw std::invalid_argument("fib_number: k must be >= 0");
    long long prev = 1, curr = 1;  // F_0 = F_1 = 1
    for (int i = 1; i < k; ++i) {
        long long next = curr + prev;
        prev = curr;
        curr = next;
    }
    return k == 0 ? prev : curr;
}

Word substitute(std::string_view w) {
    check_letters(w);
    Word out;
    out.reserve(w.size() * 2);
    for (char ch : w) {
        if (ch == kA) {
            out.push_back(kA);
            out.push_back(kB);
        } else {
            out.push_back(kA);
        }
    }
    return out;
}

Word fib_word(int k, long long cap) {
    if (k < -1) throw std::invalid_argument("fib_word: k must be >= -1");
    if (k == -1) return Word(1, kB);  // S-predecessor block, |.| = F_0
    const long long len = fib_number(k + 1);
    const std::string& u = ensure_prefix(len, cap);
    return u.substr(0, static_cast<std::size_t>(len));
}

Word fixed_point_prefix(long long n, long long cap) {
    if (n < 0) throw std::invalid_argument("fixed_point_prefix: n must be >= 0");
    const std::string& u = ensure_prefix(n, cap);
    return u.substr(0, static_cast<std::size_t>(n));
}

bool is_factor(std::string_view w) {
    if (w.empty()) throw std::invalid_argument("is_factor: empty word");
    check_letters(w);
    int k = 1;
    while (fib_number(k) < static_cast<long long>(w.size())) ++k;
    const long long scan = fib_number(k + 1) + static_cast<long long>(w.size());
    const std::string& u = ensure_prefix(scan, std::max(scan, kDefaultPrefixCap));
    return std::string_view(u.data(), static_cast<std::size_t>(scan)).find(w) !=
           std::string_view::npos;
}

bool is_repeatable(std::string_view w) {
    if (!is_factor(w)) throw std::invalid_argument("is_repeatable: word is not a factor of u");
    const auto m = static_cast<long long>(w.size());
    Word doubled = fixed_point_prefix(m);
    doubled += doubled;
    return doubled.find(w) != std::string::npos;
}

FactorCensus factor_census_length(long long length, long long cap) {
    if (length < 1) throw std::invalid_argument("factor_census: length must be >= 1");
    // All factors of length m occur in the prefix of length F_{k+2} where
    // F_k >= m; scan a bit past that.
    int k = 1;
    while (fib_number(k) < length) ++k;
    const long long scan = fib_number(k + 2) + length;
    const std::string& u = ensure_prefix(scan, std::max(scan, cap));

    std::set<std::string_view> factors;
    std::string_view view(u.data(), static_cast<std::size_t>(scan));
    for (long long i = 0; i + length <= scan; ++i)
        factors.insert(view.substr(static_cast<std::size_t>(i), static_cast<std::size_t>(length)));

    Word doubled = fixed_point_prefix(length);
    doubled += doubled;

    FactorCensus census;
    census.length = length;
    census.count = static_cast<long long>(factors.size());
    for (std::string_view f : factors) {
        if (doubled.find(f) != std::string::npos) {
            ++census.repeatable;
        } else {
            census.nonrepeatable = Word(f);
        }
    }
    return census;
}

FactorCensus factor_census(int k, long long cap) {
    if (k < 0) throw std::invalid_argument("factor_census: k must be >= 0");
    FactorCensus census = factor_census_length(fib_number(k + 1), cap);
    census.k = k;
    return census;
}

SubshiftPoint SubshiftPoint::fixed_point() { return shift(0); }

SubshiftPoint SubshiftPoint::shift(long long j) {
    if (j < 0) throw std::invalid_argument("SubshiftPoint::shift: j must be >= 0");
    SubshiftPoint p;
    p.kind_ = Kind::Shift;
    p.shift_ = j;
    return p;
}

SubshiftPoint SubshiftPoint::rotation(double theta) {
    if (!(theta >= 0.0 && theta < 1.0))
        throw std::invalid_argument("SubshiftPoint::rotation: phase must lie in [0, 1)");
    SubshiftPoint p;
    p.kind_ = Kind::Rotation;
    p.theta_ = theta;
    return p;
}

char SubshiftPoint::at(long long n) const {
    if (kind_ == Kind::Rotation)
        return fract(theta_ + double(n + 1) * kAlpha) < 1.0 - kAlpha ? kA : kB;
    const long long m = n + shift_;
    if (m >= 0) {
        const std::string& u = ensure_prefix(m + 1, std::max(m + 1, kDefaultPrefixCap));
        return u[static_cast<std::size_t>(m)];
    }
    // Left extension of u: the theta -> 0 upper limit of the rotation coding,
    // i.e. a iff {(m+1) alpha} lies in (0, 1 - alpha].  Only m = -1 and m = -2
    // hit the interval endpoints; they are pinned exactly.
    if (m == -1) return kB;
    if (m == -2) return kA;
    const double f = fract(double(m + 1) * kAlpha);
    return (f > 0.0 && f <= 1.0 - kAlpha) ? kA : kB;
}

Word SubshiftPoint::window(long long begin, long long length) const {
    Word w;
    w.reserve(static_cast<std::size_t>(length));
    for (long long i = 0; i < length; ++i) w.push_back(at(begin + i));
    return w;
}

std::string SubshiftPoint::describe() const {
    if (kind_ == Kind::Rotation) return "rot:" + std::to_string(theta_);
    if (shift_ == 0) return "u";
    return "shift:" + std::to_string(shift_);
}

std::vector<long long> repeatable_prefix_lengths(const SubshiftPoint& point, int max_k) {
    std::vector<long long> out;
    for (int k = 1; k <= max_k; ++k) {
        const long long fk = fib_number(k);
        Word prefix = point.window(0, fk);
        if (is_factor(prefix) && is_repeatable(prefix)) out.push_back(fk);
    }
    return out;
}

}  // namespace fibcmv::words
