#include "fibreprod/words.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fibreprod {

Word Word::slice(int i, int j) const {
  if (i < 0 || j < i || j > size()) throw std::invalid_argument("bad slice");
  return Word(std::vector<int>(letters_.begin() + i, letters_.begin() + j));
}

Word Word::operator+(const Word& rhs) const {
  std::vector<int> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(std::move(out));
}

Word Word::pow(int n) const {
  if (n < 0) throw std::invalid_argument("negative power");
  std::vector<int> out;
  out.reserve(letters_.size() * static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    out.insert(out.end(), letters_.begin(), letters_.end());
  return Word(std::move(out));
}

Word Word::reversed() const {
  return Word(std::vector<int>(letters_.rbegin(), letters_.rend()));
}

std::string Word::str() const {
  std::string s;
  for (int i = 0; i < size(); ++i) {
    if (i) s += '.';
    s += std::to_string(letters_[static_cast<size_t>(i)]);
  }
  return s;
}

Word rotate(const Word& w, int i) {
  if (w.empty()) throw std::invalid_argument("rotate of empty word");
  if (i < 0 || i >= w.size()) throw std::invalid_argument("rotate offset out of range");
  return w.slice(i, w.size()) + w.slice(0, i);
}

bool has_period(const Word& w, int p) {
  if (p < 1 || p > w.size()) return false;
  for (int i = 0; i + p < w.size(); ++i)
    if (w[i] != w[i + p]) return false;
  return true;
}

namespace {

// KMP failure function: fail[i] = length of the longest proper border of w[:i].
std::vector<int> failure_function(const Word& w) {
  int n = w.size();
  std::vector<int> fail(static_cast<size_t>(n) + 1, 0);
  int k = 0;
  for (int i = 1; i < n; ++i) {
    while (k > 0 && w[i] != w[k]) k = fail[static_cast<size_t>(k)];
    if (w[i] == w[k]) ++k;
    fail[static_cast<size_t>(i) + 1] = k;
  }
  return fail;
}

// All start indices of occurrences of pat in text.
std::vector<int> find_all(const Word& text, const Word& pat) {
  std::vector<int> out;
  if (pat.empty()) {
    for (int i = 0; i <= text.size(); ++i) out.push_back(i);
    return out;
  }
  std::vector<int> fail = failure_function(pat);
  int k = 0;
  for (int i = 0; i < text.size(); ++i) {
    while (k > 0 && text[i] != pat[k]) k = fail[static_cast<size_t>(k)];
    if (text[i] == pat[k]) ++k;
    if (k == pat.size()) {
      out.push_back(i - pat.size() + 1);
      k = fail[static_cast<size_t>(k)];
    }
  }
  return out;
}

}  // namespace

PeriodProfile period_profile(const Word& w) {
  if (w.empty()) throw std::invalid_argument("period profile of empty word");
  int n = w.size();
  std::vector<int> fail = failure_function(w);
  PeriodProfile out;
  // Proper borders of w, longest first, give the proper periods n - b.
  for (int b = fail[static_cast<size_t>(n)]; b > 0; b = fail[static_cast<size_t>(b)])
    out.proper_periods.push_back(n - b);
  std::sort(out.proper_periods.begin(), out.proper_periods.end());
  out.per = out.proper_periods.empty() ? n : out.proper_periods.front();
  out.ord = n / out.per;
  out.primitive = !(out.per < n && n % out.per == 0);
  return out;
}

bool fine_wilf_collapse(const Word& w, int p, int q) {
  if (p <= 0 || q <= 0 || p >= w.size() || q >= w.size() ||
      !has_period(w, p) || !has_period(w, q))
    throw std::invalid_argument("p and q must be proper periods");
  return has_period(w, std::gcd(p, q));
}

std::optional<Word> cyclic_conjugate(const Word& u, const Word& v) {
  if (u.size() != v.size()) return std::nullopt;
  if (u.empty()) return Word{};
  // v occurs in u.u at index i iff v == rotate(u, i); then c = u[i:] satisfies
  // c.u == v.c.  The largest occurrence index gives the shortest conjugator.
  std::vector<int> occ = find_all(u + u, v);
  int best = -1;
  for (int i : occ)
    if (i <= u.size()) best = std::max(best, i);
  if (best < 0) return std::nullopt;
  return u.slice(best, u.size());
}

OverlapSets overlap_sets(const Word& v, const Word& w) {
  OverlapSets out;
  for (int i = 0; i + w.size() <= v.size(); ++i) {
    bool ok = true;
    for (int k = 0; k < w.size() && ok; ++k) ok = v[i + k] == w[k];
    if (ok) out.sub.push_back(i);
  }
  for (int i = 1; i <= std::min(v.size(), w.size()); ++i) {
    bool ok = true;
    for (int k = 0; k < i && ok; ++k) ok = v[k] == w[w.size() - i + k];
    if (ok) out.pref.push_back(i);
  }
  for (int i = std::max(0, v.size() - w.size()); i < v.size(); ++i) {
    bool ok = true;
    for (int k = i; k < v.size() && ok; ++k) ok = v[k] == w[k - i];
    if (ok) out.suff.push_back(i);
  }
  return out;
}

std::vector<long long> ArithProg::materialize() const {
  std::vector<long long> out;
  for (long long i = 0; i <= p; ++i) out.push_back(i * q + r);
  return out;
}

std::vector<long long> ArithProg::materialize_clamped(long long lo, long long hi) const {
  std::vector<long long> out;
  for (long long x : materialize())
    if (x >= lo && x < hi) out.push_back(x);
  return out;
}

namespace {

// Encodes a nonempty strictly increasing set as an arithmetic progression;
// the callers' index sets are guaranteed to be uniform.
ArithProg encode_ap(const std::vector<int>& xs, int singleton_step) {
  ArithProg ap;
  ap.r = xs.front();
  ap.p = static_cast<long long>(xs.size()) - 1;
  ap.q = xs.size() > 1 ? xs[1] - xs[0] : singleton_step;
  for (size_t i = 1; i < xs.size(); ++i)
    if (xs[i] - xs[i - 1] != ap.q)
      throw std::logic_error("occurrence set is not an arithmetic progression");
  return ap;
}

}  // namespace

std::optional<ArithProg> crossing_indices(const Word& v, const Word& w, int j) {
  if (j < 0 || j >= v.size()) throw std::invalid_argument("crossing position out of range");
  if (w.empty()) throw std::invalid_argument("empty pattern");
  std::vector<int> xs;
  for (int i : overlap_sets(v, w).sub)
    if (i <= j && j < i + w.size()) xs.push_back(i);
  if (xs.empty()) return std::nullopt;
  return encode_ap(xs, period_profile(w).per);
}

std::vector<ArithProg> sub_decomposition(const Word& v, const Word& w) {
  if (w.empty()) throw std::invalid_argument("empty pattern");
  std::vector<ArithProg> out;
  std::vector<int> sub = overlap_sets(v, w).sub;
  size_t pos = 0;
  while (pos < sub.size()) {
    int j = sub[pos] + w.size() - 1;  // window anchored at the first uncovered hit
    std::optional<ArithProg> ap = crossing_indices(v, w, j);
    if (!ap) throw std::logic_error("anchored window lost its occurrence");
    out.push_back(*ap);
    long long last = ap->p * ap->q + ap->r;
    while (pos < sub.size() && sub[pos] <= last) ++pos;
  }
  return out;
}

std::vector<ArithProg> suff_decomposition(const Word& v, const Word& w) {
  if (v.empty() || w.empty()) throw std::invalid_argument("empty word");
  std::vector<int> suff = overlap_sets(v, w).suff;
  std::vector<ArithProg> out;
  std::set<long long> covered;
  size_t pos = 0;
  while (pos < suff.size()) {
    while (pos < suff.size() && covered.count(suff[pos])) ++pos;
    if (pos == suff.size()) break;
    long long j = suff[pos];
    // Nearest overlap index strictly above j; the sentinel |v| caps the step.
    long long l = v.size();
    for (int s : suff)
      if (s > j && s < l) l = s;
    ArithProg ap;
    ap.r = j;
    ap.q = l - j;
    ap.p = (static_cast<long long>(v.size()) - j) / ap.q;
    out.push_back(ap);
    for (long long x : ap.materialize_clamped(std::max(0, v.size() - w.size()), v.size()))
      covered.insert(x);
  }
  return out;
}

int good_cyclic_shift(const Word& w, const std::vector<Word>& xs) {
  if (!period_profile(w).primitive)
    throw std::invalid_argument("shift base must be primitive");
  for (int i = 0; i < w.size(); ++i) {
    Word w0 = rotate(w, i);
    Word sq = w0 + w0;
    bool ok = true;
    for (const Word& x : xs) {
      if (x.empty() || x.size() > sq.size()) continue;
      std::optional<ArithProg> ap = crossing_indices(sq, x, w0.size() - 1);
      if (ap && ap->p + 1 > 2) {
        ok = false;
        break;
      }
    }
    if (ok) return i;
  }
  throw std::logic_error("no good cyclic shift exists");
}

int max_w_factorisation(const Word& x, const Word& w, Side side) {
  if (!period_profile(w).primitive)
    throw std::invalid_argument("factorisation base must be primitive");
  if (side == Side::Right)
    return max_w_factorisation(x.reversed(), w.reversed(), Side::Left);
  int best = 0;
  for (int s = 0; s < w.size(); ++s) {
    int k = 0;
    while (k < x.size() && x[k] == w[(s + k) % w.size()]) ++k;
    best = std::max(best, k);
  }
  return best;
}

}  // namespace fibreprod
