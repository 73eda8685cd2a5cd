#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fibreprod {

// A word over an integer alphabet.  Letters are opaque ids, so the same type
// serves for alphabet symbols, edge ids along a path, and signed free-group
// letters.
class Word {
public:
  Word() = default;
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<int> letters) : letters_(letters) {}

  int size() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  int operator[](int i) const { return letters_[static_cast<size_t>(i)]; }
  const std::vector<int>& letters() const { return letters_; }

  // w[i:j], requires 0 <= i <= j <= size().
  Word slice(int i, int j) const;
  Word prefix(int k) const { return slice(0, k); }
  Word suffix(int k) const { return slice(size() - k, size()); }

  Word operator+(const Word& rhs) const;
  Word pow(int n) const;
  Word reversed() const;

  void push_back(int letter) { letters_.push_back(letter); }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    return a.letters_ <=> b.letters_;
  }

  std::string str() const;  // debugging aid, letters joined by '.'

private:
  std::vector<int> letters_;
};

// w[i:] . w[:i], requires 0 <= i < |w| and w nonempty.
Word rotate(const Word& w, int i);

// Periods of a word.  per == size() when no proper period exists;
// ord == floor(size() / per); primitive unless a proper period divides size().
struct PeriodProfile {
  std::vector<int> proper_periods;  // strictly increasing, all < |w|
  int per = 0;
  int ord = 0;
  bool primitive = true;
};

PeriodProfile period_profile(const Word& w);

bool has_period(const Word& w, int p);

// Requires p and q proper periods of w.  Returns whether gcd(p, q) is also a
// period; guaranteed true when |w| >= p + q - gcd(p, q).
bool fine_wilf_collapse(const Word& w, int p, int q);

// If u and v are cyclic rotations of each other, returns the shortest word c
// with c.u == v.c; otherwise nullopt.
std::optional<Word> cyclic_conjugate(const Word& u, const Word& v);

// Occurrence sets of w against v.
struct OverlapSets {
  std::vector<int> sub;   // i with v[i : i+|w|] == w
  std::vector<int> pref;  // i in (0, min(|v|,|w|)] with v[:i] == w[|w|-i:]
  std::vector<int> suff;  // i in [max(0,|v|-|w|), |v|) with v[i:] == w[:|v|-i]
};

OverlapSets overlap_sets(const Word& v, const Word& w);

// Arithmetic progression {i*q + r : 0 <= i <= p}.
struct ArithProg {
  long long p = 0;  // number of steps
  long long q = 1;  // step, >= 1 unless p == 0
  long long r = 0;  // base

  std::vector<long long> materialize() const;
  // Elements clamped to [lo, hi).
  std::vector<long long> materialize_clamped(long long lo, long long hi) const;

  friend bool operator==(const ArithProg&, const ArithProg&) = default;
};

// Occurrences of w in v that cross position j (i <= j < i + |w|), as an
// arithmetic progression.  nullopt when there are none.
std::optional<ArithProg> crossing_indices(const Word& v, const Word& w, int j);

// Covers sub(v, w) by at most floor(|v|/|w|) arithmetic progressions whose
// base points are at least |w| apart.
std::vector<ArithProg> sub_decomposition(const Word& v, const Word& w);

// Covers suff(v, w) by at most max(1, min(floor(log2 |v|), floor(log2 |w|)))
// progressions (clamped to the legal index range), built greedily from the
// smallest uncovered index; successive steps at least halve.
std::vector<ArithProg> suff_decomposition(const Word& v, const Word& w);

// Smallest i such that w0 = rotate(w, i) satisfies
// |crossing_indices(w0^2, x, |w0|-1)| <= 2 for every x in xs.
// Requires w primitive and nonempty.
int good_cyclic_shift(const Word& w, const std::vector<Word>& xs);

enum class Side { Left, Right };

// Length of the longest prefix (Side::Left) or suffix (Side::Right) of x that
// occurs as a subword of some power of w.  Requires w primitive.
int max_w_factorisation(const Word& x, const Word& w, Side side);

}  // namespace fibreprod
