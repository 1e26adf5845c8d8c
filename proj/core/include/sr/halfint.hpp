#pragma once

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sr {

/// Exact half-integer angular-momentum value. Stores twice the value so
/// 1/2, 1, 3/2, ... carry no rounding error.
class HalfInt {
public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int twice) : twice_(twice) {}

  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt whole(int n) { return HalfInt(2 * n); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr bool nonnegative() const { return twice_ >= 0; }

  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
    return HalfInt(a.twice_ + b.twice_);
  }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
    return HalfInt(a.twice_ - b.twice_);
  }
  friend constexpr HalfInt operator*(int n, HalfInt a) {
    return HalfInt(n * a.twice_);
  }
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

  constexpr HalfInt abs() const { return HalfInt(twice_ < 0 ? -twice_ : twice_); }

  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

private:
  int twice_ = 0;
};

/// Number of projection levels, 2j + 1.
constexpr int multiplicity(HalfInt j) { return j.twice() + 1; }

/// Row/column index of projection m in the descending basis (m = j first).
constexpr int level_index(HalfInt j, HalfInt m) {
  return (j.twice() - m.twice()) / 2;
}

/// Inverse of level_index.
constexpr HalfInt projection_at(HalfInt j, int index) {
  return HalfInt(j.twice() - 2 * index);
}

/// True when m is a valid projection of spin j (|m| <= j, j - m integer).
constexpr bool projection_valid(HalfInt j, HalfInt m) {
  return m.abs() <= j && (j.twice() - m.twice()) % 2 == 0;
}

inline void require_projection(HalfInt j, HalfInt m, const char* what) {
  if (!projection_valid(j, m))
    throw std::domain_error(std::string(what) + ": projection " + m.str() +
                            " invalid for spin " + j.str());
}

}  // namespace sr
