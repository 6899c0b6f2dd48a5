#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fibcmv::words {

// Words over the two-letter alphabet {a, b}, stored as byte strings.
using Word = std::string;

inline constexpr char kA = 'a';
inline constexpr char kB = 'b';

// Default cap on the memoized prefix of the fixed point u (letters).
inline constexpr long long kDefaultPrefixCap = 1'000'000;

// Fibonacci numbers in the convention F_1 = 1, F_2 = 2 (F_0 = 1), so that
// F_8 = 34 and |S^k(a)| = F_{k+1}.
long long fib_number(int k);

// The substitution a -> ab, b -> a, extended letterwise.
Word substitute(std::string_view w);

// S^k(a); length F_{k+1}.  Throws std::length_error past the cap.
Word fib_word(int k, long long cap = kDefaultPrefixCap);

// First n letters of the fixed point u = abaababaabaab...
Word fixed_point_prefix(long long n, long long cap = kDefaultPrefixCap);

// True iff w occurs as a factor of u.  Scans a prefix of length
// F_{k+1} + |w| where F_k is the smallest Fibonacci number >= |w|.
bool is_factor(std::string_view w);

// True iff w is a cyclic rotation of the prefix u_0...u_{|w|-1},
// equivalently w occurs in that prefix doubled.  Rejects non-factors.
bool is_repeatable(std::string_view w);

struct FactorCensus {
    int k = 0;
    long long length = 0;       // F_{k+1} = |S^k(a)|
    long long count = 0;        // distinct factors of that length
    long long repeatable = 0;
    Word nonrepeatable;         // the unique nonrepeatable factor
};

// Enumerates and classifies all distinct factors of u of length |S^k(a)|.
FactorCensus factor_census(int k, long long cap = kDefaultPrefixCap);

// Same census for an arbitrary factor length.
FactorCensus factor_census_length(long long length, long long cap = kDefaultPrefixCap);

// A point of the Fibonacci subshift, indexable over all of Z.
//
// Three kinds are provided: the fixed point u itself (with the left
// extension ...ab fixed once: omega_{-1} = b, omega_{-2} = a), shifts of it,
// and rotation-coded points with phase theta in [0,1) under the half-open
// coding interval [0, 1-alpha), alpha = (3 - sqrt 5)/2.
class SubshiftPoint {
  public:
    static SubshiftPoint fixed_point();
    static SubshiftPoint shift(long long j);       // j >= 0
    static SubshiftPoint rotation(double theta);   // theta in [0, 1)

    char at(long long n) const;
    Word window(long long begin, long long length) const;

    bool is_rotation() const { return kind_ == Kind::Rotation; }
    long long shift_offset() const { return shift_; }
    double phase() const { return theta_; }
    std::string describe() const;

  private:
    enum class Kind { Shift, Rotation };
    Kind kind_ = Kind::Shift;
    long long shift_ = 0;
    double theta_ = 0.0;
};

// The subsequence of {F_k}, k = 1..max_k, for which the prefix
// omega_0...omega_{F_k - 1} is a repeatable factor of u.
std::vector<long long> repeatable_prefix_lengths(const SubshiftPoint& point, int max_k);

}  // namespace fibcmv::words
