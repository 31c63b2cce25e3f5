#include "goodpair/search.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <utility>

#include "goodpair/errors.hpp"
#include "goodpair/pool.hpp"
#include "json_detail.hpp"

namespace goodpair {

std::string search_mode_str(SearchMode m) {
  return m == SearchMode::Exhaustive ? "exhaustive" : "randomized";
}

SearchMode search_mode_from_str(const std::string& s) {
  if (s == "exhaustive") return SearchMode::Exhaustive;
  if (s == "randomized") return SearchMode::Randomized;
  throw ParseError("unknown search mode \"" + s + "\"");
}

std::size_t search_entry_count(std::size_t l, std::size_t n) {
  if (l == 0 || n <= l) throw ContractError("search requires n > l >= 1");
  std::size_t s = n - l;
  return s * (s + 1) / 2;
}

namespace {

constexpr std::size_t kMaxAlphabet = 4096;
constexpr std::size_t kMaxSuffix = 1u << 22;  // candidates per enumeration block
constexpr std::size_t kMinBlocks = 512;
constexpr std::size_t kRandomBlock = 4096;
constexpr std::size_t kUnknownClassCap = 10000;
constexpr std::size_t kRefutationCap = 1000000;

struct Alphabet {
  std::size_t l = 0;
  bool basic = true;  // {0, +z_v, -z_v}
  std::vector<LinearForm> forms;
  std::vector<std::uint32_t> masks;  // variables present per form
};

Alphabet build_alphabet(std::size_t l, int coeff_bound) {
  Alphabet a;
  a.l = l;
  a.basic = coeff_bound <= 0;
  if (a.basic) {
    a.forms.emplace_back(l);
    for (std::size_t v = 0; v < l; ++v) {
      a.forms.push_back(LinearForm::unit(l, v, 1));
      a.forms.push_back(LinearForm::unit(l, v, -1));
    }
  } else {
    std::vector<int> c(l, -coeff_bound);
    for (;;) {
      LinearForm f(l);
      for (std::size_t v = 0; v < l; ++v) f.set_coeff(v, Rational(c[v]));
      a.forms.push_back(std::move(f));
      std::size_t pos = 0;
      while (pos < l && c[pos] == coeff_bound) {
        c[pos] = -coeff_bound;
        ++pos;
      }
      if (pos == l) break;
      ++c[pos];
    }
  }
  if (a.forms.size() > kMaxAlphabet)
    throw ContractError("entry alphabet too large; lower the coefficient bound");
  for (const auto& f : a.forms) {
    std::uint32_t m = 0;
    for (std::size_t v = 0; v < l; ++v)
      if (f.coeff(v) != 0) m |= (1u << v);
    a.masks.push_back(m);
  }
  return a;
}

// Exact integer sample points. Axis, pair, and triple combinations form the
// structured battery; the random family comes from the seeded generator.
std::vector<std::vector<std::int64_t>> structured_points(std::size_t l) {
  std::vector<std::vector<std::int64_t>> pts;
  for (std::size_t v = 0; v < l; ++v) {
    std::vector<std::int64_t> p(l, 0);
    p[v] = 1;
    pts.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j)
      for (int sj : {1, -1}) {
        std::vector<std::int64_t> p(l, 0);
        p[i] = 1;
        p[j] = sj;
        pts.push_back(std::move(p));
      }
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j)
      for (std::size_t k = j + 1; k < l; ++k)
        for (int sj : {1, -1})
          for (int sk : {1, -1}) {
            std::vector<std::int64_t> p(l, 0);
            p[i] = 1;
            p[j] = sj;
            p[k] = sk;
            pts.push_back(std::move(p));
          }
  if (l > 3) {
    for (std::uint32_t bits = 0; bits < (1u << (l - 1)); ++bits) {
      std::vector<std::int64_t> p(l, 1);
      for (std::size_t v = 1; v < l; ++v)
        if (bits & (1u << (v - 1))) p[v] = -1;
      pts.push_back(std::move(p));
    }
  }
  return pts;
}

std::vector<std::vector<std::int64_t>> random_points(std::size_t l, std::size_t count,
                                                     std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<std::int64_t>> pts;
  while (pts.size() < count) {
    std::vector<std::int64_t> p(l);
    bool nonzero = false;
    for (std::size_t v = 0; v < l; ++v) {
      p[v] = rng.uniform_int(-9, 9);
      nonzero = nonzero || p[v] != 0;
    }
    if (nonzero) pts.push_back(std::move(p));
  }
  return pts;
}

struct PointFamily {
  std::vector<std::vector<Rational>> points;           // for witnesses
  std::vector<std::vector<std::int64_t>> vals;         // [code][point]
  std::size_t count = 0;
};

PointFamily make_family(const Alphabet& a, const std::vector<std::vector<std::int64_t>>& pts) {
  PointFamily f;
  f.count = pts.size();
  for (const auto& p : pts) {
    std::vector<Rational> q;
    q.reserve(p.size());
    for (auto c : p) q.emplace_back(static_cast<long>(c));
    f.points.push_back(std::move(q));
  }
  f.vals.resize(a.forms.size(), std::vector<std::int64_t>(pts.size(), 0));
  for (std::size_t code = 0; code < a.forms.size(); ++code)
    for (std::size_t pt = 0; pt < pts.size(); ++pt) {
      std::int64_t v = 0;
      for (std::size_t u = 0; u < a.l; ++u)
        v += to_int64(a.forms[code].coeff(u).get_num()) * pts[pt][u];
      f.vals[code][pt] = v;
    }
  return f;
}

// Fraction-free elimination; divisions are exact. Destroys a.
template <typename I>
I det_int(I* a, std::size_t s) {
  if (s == 1) return a[0];
  int sgn = 1;
  I prev = 1;
  for (std::size_t k = 0; k + 1 < s; ++k) {
    if (a[k * s + k] == 0) {
      std::size_t r = k + 1;
      while (r < s && a[r * s + k] == 0) ++r;
      if (r == s) return 0;
      for (std::size_t j = 0; j < s; ++j) std::swap(a[k * s + j], a[r * s + j]);
      sgn = -sgn;
    }
    for (std::size_t i = k + 1; i < s; ++i)
      for (std::size_t j = k + 1; j < s; ++j)
        a[i * s + j] = (a[k * s + k] * a[i * s + j] - a[i * s + k] * a[k * s + j]) / prev;
    prev = a[k * s + k];
  }
  I d = a[s * s - 1];
  return sgn > 0 ? d : -d;
}

Rational rational_of_i128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Integer big(static_cast<unsigned long>(u >> 64));
  big <<= 64;
  big += static_cast<unsigned long>(u & 0xffffffffffffffffULL);
  if (neg) big = -big;
  return Rational(big);
}

struct Context {
  SearchConfig cfg;
  std::size_t s = 0, entries = 0;
  Alphabet alphabet;
  PointFamily random_family, structured_family;
  bool wide = false;  // determinants may overflow int64; use 128-bit
  std::uint32_t full_mask = 0;
  std::vector<std::pair<std::size_t, std::size_t>> entry_pos;

  std::mutex cache_mu;
  std::map<std::uint64_t, std::shared_ptr<const DefinitenessVerdict>> verdict_cache;
};

SymbolicMatrix matrix_of(const Context& ctx, const std::vector<std::uint16_t>& codes) {
  SymbolicMatrix m(ctx.cfg.l, ctx.s);
  for (std::size_t e = 0; e < ctx.entries; ++e)
    m.set(ctx.entry_pos[e].first, ctx.entry_pos[e].second, ctx.alphabet.forms[codes[e]]);
  return m;
}

// Smallest content hash over variable permutations and sign flips. Matrices
// in one orbit share it, so verdicts are cached once per determinant class.
std::uint64_t det_class_hash(const Poly& det) {
  std::size_t l = det.var_count();
  std::vector<std::size_t> perm(l);
  for (std::size_t v = 0; v < l; ++v) perm[v] = v;
  std::uint64_t best = ~0ULL;
  do {
    for (std::uint32_t flips = 0; flips < (1u << l); ++flips) {
      Poly t(l);
      for (const auto& [mono, coeff] : det.terms()) {
        std::vector<std::uint32_t> exps(l, 0);
        bool negate = false;
        for (std::size_t v = 0; v < l; ++v) {
          exps[perm[v]] = mono.exponents()[v];
          if ((flips >> v) & 1 && mono.exponents()[v] % 2 == 1) negate = !negate;
        }
        t.add_term(Monomial(std::move(exps)), negate ? -coeff : coeff);
      }
      best = std::min(best, t.content_hash());
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

IndefiniteWitness zero_point_witness(std::vector<Rational> point) {
  IndefiniteWitness w;
  w.point = std::move(point);
  w.value = 0;
  return w;
}

IndefiniteWitness sign_pair_witness(std::vector<Rational> p1, Rational v1, std::vector<Rational> p2,
                                    Rational v2) {
  IndefiniteWitness w;
  if (sign(v1) < 0) {
    w.point = std::move(p1);
    w.value = std::move(v1);
    w.opposite_point = std::move(p2);
    w.opposite_value = std::move(v2);
  } else {
    w.point = std::move(p2);
    w.value = std::move(v2);
    w.opposite_point = std::move(p1);
    w.opposite_value = std::move(v1);
  }
  return w;
}

enum class Outcome : std::uint8_t {
  MissingVar,
  Numeric,
  Structured,
  Indefinite,
  ZeroDet,
  Unknown,
  Accepted
};

struct Classified {
  Outcome outcome;
  std::optional<IndefiniteWitness> witness;  // built only when recording refutations
  std::shared_ptr<const DefinitenessVerdict> verdict;
  std::uint64_t det_class = 0;
};

// Per-block buffers so the hot scan path never allocates.
struct Workspace {
  std::vector<std::int64_t> w64;
  std::vector<__int128> w128;
};

enum class HitKind : std::uint8_t { None, Zero, OddPair, Mismatch };

struct ScanHit {
  HitKind kind = HitKind::None;
  const PointFamily* fam = nullptr;
  std::size_t pt = 0;
};

struct NumericRef {
  int sign = 0;
  const PointFamily* fam = nullptr;
  std::size_t pt = 0;
};

template <typename I>
I det_at(const Context& ctx, const std::vector<std::uint16_t>& codes, const PointFamily& fam,
         std::size_t pt, I* scratch) {
  std::size_t s = ctx.s;
  for (std::size_t e = 0; e < ctx.entries; ++e) {
    I v = static_cast<I>(fam.vals[codes[e]][pt]);
    auto [i, j] = ctx.entry_pos[e];
    scratch[i * s + j] = v;
    scratch[j * s + i] = v;
  }
  return det_int(scratch, s);
}

template <typename I>
ScanHit scan_family(const Context& ctx, const std::vector<std::uint16_t>& codes,
                    const PointFamily& fam, NumericRef& ref, I* scratch) {
  bool odd = ctx.s % 2 == 1;
  for (std::size_t pt = 0; pt < fam.count; ++pt) {
    I d = det_at(ctx, codes, fam, pt, scratch);
    if (d == 0) return ScanHit{HitKind::Zero, &fam, pt};
    if (odd) return ScanHit{HitKind::OddPair, &fam, pt};
    int sg = d > 0 ? 1 : -1;
    if (ref.sign == 0) {
      ref = NumericRef{sg, &fam, pt};
    } else if (sg != ref.sign) {
      return ScanHit{HitKind::Mismatch, &fam, pt};
    }
  }
  return ScanHit{};
}

template <typename I>
Rational det_value(const Context& ctx, const std::vector<std::uint16_t>& codes,
                   const PointFamily& fam, std::size_t pt, I* scratch) {
  I d = det_at(ctx, codes, fam, pt, scratch);
  if constexpr (sizeof(I) > 8)
    return rational_of_i128(d);
  else
    return Rational(static_cast<long>(d));
}

template <typename I>
IndefiniteWitness materialize(const Context& ctx, const std::vector<std::uint16_t>& codes,
                              const ScanHit& hit, const NumericRef& ref, I* scratch) {
  if (hit.kind == HitKind::Zero) return zero_point_witness(hit.fam->points[hit.pt]);
  if (hit.kind == HitKind::OddPair) {
    // Odd matrix size: negating the point negates the determinant.
    Rational v = det_value(ctx, codes, *hit.fam, hit.pt, scratch);
    std::vector<Rational> neg;
    neg.reserve(ctx.cfg.l);
    for (const auto& c : hit.fam->points[hit.pt]) neg.push_back(-c);
    return sign_pair_witness(hit.fam->points[hit.pt], v, std::move(neg), -v);
  }
  return sign_pair_witness(ref.fam->points[ref.pt], det_value(ctx, codes, *ref.fam, ref.pt, scratch),
                           hit.fam->points[hit.pt], det_value(ctx, codes, *hit.fam, hit.pt, scratch));
}

template <typename I>
ScanHit scan_both(const Context& ctx, const std::vector<std::uint16_t>& codes, Classified& out,
                  NumericRef& ref, I* scratch) {
  ScanHit hit = scan_family(ctx, codes, ctx.random_family, ref, scratch);
  if (hit.kind != HitKind::None) {
    out.outcome = Outcome::Numeric;
    return hit;
  }
  hit = scan_family(ctx, codes, ctx.structured_family, ref, scratch);
  if (hit.kind != HitKind::None) out.outcome = Outcome::Structured;
  return hit;
}

Classified classify(Context& ctx, Workspace& ws, const std::vector<std::uint16_t>& codes) {
  Classified out;
  std::uint32_t mask = 0;
  for (std::size_t e = 0; e < ctx.entries; ++e) mask |= ctx.alphabet.masks[codes[e]];
  if (mask != ctx.full_mask) {
    out.outcome = Outcome::MissingVar;
    if (ctx.cfg.record_refutations) {
      std::size_t missing = 0;
      while ((mask >> missing) & 1) ++missing;
      std::vector<Rational> axis(ctx.cfg.l, Rational(0));
      axis[missing] = 1;
      // Every entry omits z_missing, so the whole matrix vanishes there.
      out.witness = zero_point_witness(std::move(axis));
    }
    return out;
  }

  NumericRef ref;
  ScanHit hit;
  if (ctx.wide) {
    if (ws.w128.size() < ctx.s * ctx.s) ws.w128.assign(ctx.s * ctx.s, 0);
    hit = scan_both(ctx, codes, out, ref, ws.w128.data());
    if (hit.kind != HitKind::None) {
      if (ctx.cfg.record_refutations)
        out.witness = materialize(ctx, codes, hit, ref, ws.w128.data());
      return out;
    }
  } else {
    if (ws.w64.size() < ctx.s * ctx.s) ws.w64.assign(ctx.s * ctx.s, 0);
    hit = scan_both(ctx, codes, out, ref, ws.w64.data());
    if (hit.kind != HitKind::None) {
      if (ctx.cfg.record_refutations)
        out.witness = materialize(ctx, codes, hit, ref, ws.w64.data());
      return out;
    }
  }

  Poly det = det_symbolic(matrix_of(ctx, codes));
  if (det.is_zero()) {
    out.outcome = Outcome::ZeroDet;
    if (ctx.cfg.record_refutations) {
      std::vector<Rational> axis(ctx.cfg.l, Rational(0));
      axis[0] = 1;
      out.witness = zero_point_witness(std::move(axis));
    }
    return out;
  }
  out.det_class = det_class_hash(det);

  std::shared_ptr<const DefinitenessVerdict> verdict;
  {
    std::lock_guard<std::mutex> lock(ctx.cache_mu);
    auto it = ctx.verdict_cache.find(out.det_class);
    if (it != ctx.verdict_cache.end()) verdict = it->second;
  }
  if (!verdict) {
    // decide is deterministic, so a racing duplicate is byte-identical.
    auto fresh = std::make_shared<DefinitenessVerdict>(decide(det, ctx.cfg.decide_budget, 1));
    std::lock_guard<std::mutex> lock(ctx.cache_mu);
    auto [it, inserted] = ctx.verdict_cache.emplace(out.det_class, std::move(fresh));
    verdict = it->second;
  }
  out.verdict = verdict;
  switch (verdict->kind) {
    case VerdictKind::PositiveDefinite:
    case VerdictKind::NegativeDefinite:
      out.outcome = Outcome::Accepted;
      break;
    case VerdictKind::Indefinite:
      out.outcome = Outcome::Indefinite;
      if (ctx.cfg.record_refutations && verdict->witness) out.witness = *verdict->witness;
      break;
    case VerdictKind::IdenticallyZero:
      out.outcome = Outcome::ZeroDet;
      break;
    case VerdictKind::Unknown:
      out.outcome = Outcome::Unknown;
      break;
  }
  return out;
}

struct UnknownClass {
  std::vector<std::uint16_t> codes;
  std::shared_ptr<const DefinitenessVerdict> verdict;
  std::uint64_t det_class = 0;
  std::uint64_t count = 0;
};

struct BlockResult {
  SearchCounters counters;
  std::vector<std::vector<std::uint16_t>> accepted;
  std::vector<UnknownClass> unknowns;
  std::vector<RefutationRecord> refutations;
};

void record(Context& ctx, Workspace& ws, BlockResult& br, const std::vector<std::uint16_t>& codes,
            std::map<std::uint64_t, std::size_t>& unknown_idx) {
  Classified c = classify(ctx, ws, codes);
  ++br.counters.scanned;
  switch (c.outcome) {
    case Outcome::MissingVar:
      ++br.counters.refuted_missing_var;
      break;
    case Outcome::Numeric:
      ++br.counters.refuted_numeric;
      break;
    case Outcome::Structured:
      ++br.counters.refuted_structured;
      break;
    case Outcome::Indefinite:
      ++br.counters.rejected_indefinite;
      break;
    case Outcome::ZeroDet:
      ++br.counters.zero_determinant;
      break;
    case Outcome::Unknown: {
      ++br.counters.unknown;
      auto [it, inserted] = unknown_idx.emplace(c.det_class, br.unknowns.size());
      if (inserted)
        br.unknowns.push_back(UnknownClass{codes, c.verdict, c.det_class, 1});
      else
        ++br.unknowns[it->second].count;
      break;
    }
    case Outcome::Accepted:
      ++br.counters.accepted;
      br.accepted.push_back(codes);
      break;
  }
  if (ctx.cfg.record_refutations && c.outcome != Outcome::Accepted &&
      c.outcome != Outcome::Unknown && c.witness) {
    br.refutations.push_back(RefutationRecord{matrix_of(ctx, codes), *c.witness});
  }
}

std::uint64_t pow_u64(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

struct Partition {
  std::size_t prefix_len = 0;
  std::uint64_t block_count = 0;
  std::uint64_t suffix_size = 0;
};

Partition make_partition(std::size_t entries, std::size_t alphabet_size) {
  // Enough blocks to parallelize, small enough suffixes to checkpoint.
  std::size_t p512 = 0;
  std::uint64_t acc = 1;
  while (p512 < entries && acc < kMinBlocks) {
    acc *= alphabet_size;
    ++p512;
  }
  std::size_t max_suffix_pow = 0;
  acc = 1;
  while (max_suffix_pow < entries && acc * alphabet_size <= kMaxSuffix) {
    acc *= alphabet_size;
    ++max_suffix_pow;
  }
  Partition part;
  part.prefix_len = std::max(p512, entries - std::min(entries, max_suffix_pow));
  part.prefix_len = std::min(part.prefix_len, entries);
  part.block_count = pow_u64(alphabet_size, part.prefix_len);
  part.suffix_size = pow_u64(alphabet_size, entries - part.prefix_len);
  return part;
}

BlockResult run_block_exhaustive(Context& ctx, const Partition& part, std::uint64_t block) {
  BlockResult br;
  Workspace ws;
  std::map<std::uint64_t, std::size_t> unknown_idx;
  std::vector<std::uint16_t> codes(ctx.entries, 0);
  std::uint64_t idx = block;
  for (std::size_t e = part.prefix_len; e-- > 0;) {
    codes[e] = static_cast<std::uint16_t>(idx % ctx.alphabet.forms.size());
    idx /= ctx.alphabet.forms.size();
  }
  for (;;) {
    record(ctx, ws, br, codes, unknown_idx);
    std::size_t pos = ctx.entries;
    while (pos-- > part.prefix_len) {
      if (codes[pos] + 1u < ctx.alphabet.forms.size()) {
        ++codes[pos];
        break;
      }
      codes[pos] = 0;
    }
    if (pos < part.prefix_len || pos == static_cast<std::size_t>(-1)) break;
  }
  return br;
}

BlockResult run_block_random(Context& ctx, std::uint64_t block, std::size_t count) {
  BlockResult br;
  Workspace ws;
  std::map<std::uint64_t, std::size_t> unknown_idx;
  std::uint64_t h = kFnvOffset;
  hash_u64(h, ctx.cfg.seed);
  hash_u64(h, block + 1);
  Rng rng(h);
  std::vector<std::uint16_t> codes(ctx.entries, 0);
  for (std::size_t t = 0; t < count; ++t) {
    for (std::size_t e = 0; e < ctx.entries; ++e)
      codes[e] = static_cast<std::uint16_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(ctx.alphabet.forms.size()) - 1));
    record(ctx, ws, br, codes, unknown_idx);
  }
  return br;
}

struct MergeState {
  SearchReport report;
  std::map<std::string, std::size_t> accepted_idx;
  std::map<std::uint64_t, std::size_t> unknown_idx;
  std::vector<std::uint64_t> unknown_class_keys;  // parallel to report.unknowns
  std::uint64_t blocks_done = 0;
};

void merge_block(Context& ctx, MergeState& st, BlockResult&& br) {
  SearchCounters& c = st.report.counters;
  c.scanned += br.counters.scanned;
  c.refuted_missing_var += br.counters.refuted_missing_var;
  c.refuted_numeric += br.counters.refuted_numeric;
  c.refuted_structured += br.counters.refuted_structured;
  c.rejected_indefinite += br.counters.rejected_indefinite;
  c.zero_determinant += br.counters.zero_determinant;
  c.unknown += br.counters.unknown;
  c.accepted += br.counters.accepted;

  for (const auto& codes : br.accepted) {
    SymbolicMatrix m = matrix_of(ctx, codes);
    SymbolicMatrix canon = ctx.alphabet.basic ? canonical_form(m) : m;
    std::string id = ctx.alphabet.basic ? alphabet_id(canon) : hex_id(m.content_hash());
    if (st.accepted_idx.count(id)) continue;
    Poly det = det_symbolic(canon);
    // Re-certify the canonical representative with a roomy budget.
    Budget wide{1'000'000, 24, ctx.cfg.decide_budget.sample_count};
    DefinitenessVerdict verdict = decide(det, wide, 1);
    if (verdict.kind != VerdictKind::PositiveDefinite &&
        verdict.kind != VerdictKind::NegativeDefinite) {
      // The scanned orbit member certified but its canonical twin did not;
      // keep it visible instead of dropping it.
      verdict.note = "canonical representative did not re-certify: " + verdict.note;
      if (st.report.unknowns.size() < kUnknownClassCap) {
        st.report.unknowns.push_back(
            UnknownRecord{canon, verdict, 1});
        st.unknown_class_keys.push_back(det_class_hash(det));
      } else {
        st.report.unknowns_capped = true;
      }
      continue;
    }
    st.accepted_idx.emplace(id, st.report.accepted.size());
    st.report.accepted.push_back(
        GoodPairCandidate{ctx.cfg.l, ctx.cfg.n, canon, det, std::move(verdict), id});
  }

  for (auto& u : br.unknowns) {
    auto it = st.unknown_idx.find(u.det_class);
    if (it != st.unknown_idx.end()) {
      st.report.unknowns[it->second].class_count += u.count;
      continue;
    }
    if (st.report.unknowns.size() >= kUnknownClassCap) {
      st.report.unknowns_capped = true;
      continue;
    }
    st.unknown_idx.emplace(u.det_class, st.report.unknowns.size());
    st.unknown_class_keys.push_back(u.det_class);
    st.report.unknowns.push_back(UnknownRecord{matrix_of(ctx, u.codes), *u.verdict, u.count});
  }

  for (auto& r : br.refutations) {
    if (st.report.refutations.size() >= kRefutationCap) {
      st.report.refutations_capped = true;
      break;
    }
    st.report.refutations.push_back(std::move(r));
  }
}

// ---------- checkpointing ----------

constexpr const char* kCheckpointMagic = "goodpair-search-checkpoint";
constexpr int kCheckpointVersion = 1;

void require_compatible(const SearchConfig& want, const SearchConfig& have) {
  bool same = want.l == have.l && want.n == have.n && want.mode == have.mode &&
              want.seed == have.seed && want.coeff_bound == have.coeff_bound &&
              want.numeric_points == have.numeric_points &&
              want.decide_budget.max_boxes == have.decide_budget.max_boxes &&
              want.decide_budget.max_depth == have.decide_budget.max_depth &&
              want.decide_budget.sample_count == have.decide_budget.sample_count &&
              want.random_samples == have.random_samples &&
              want.record_refutations == have.record_refutations;
  if (!same)
    throw ContractError(
        "checkpoint was written by a different search configuration; refusing to resume");
}

void save_checkpoint(const std::string& path, const Context& ctx, const MergeState& st,
                     std::uint64_t block_count) {
  detail::json j;
  j["magic"] = kCheckpointMagic;
  j["version"] = kCheckpointVersion;
  j["config"] = detail::search_config_to_j(ctx.cfg);
  j["blocks_done"] = st.blocks_done;
  j["block_count"] = block_count;
  j["truncated"] = st.report.truncated;
  j["counters"] = detail::counters_to_j(st.report.counters);
  detail::json acc = detail::json::array();
  for (const auto& cand : st.report.accepted) acc.push_back(detail::candidate_to_j(cand));
  j["accepted"] = std::move(acc);
  detail::json unk = detail::json::array();
  for (std::size_t i = 0; i < st.report.unknowns.size(); ++i) {
    detail::json uj;
    uj["matrix"] = detail::matrix_to_j(st.report.unknowns[i].matrix);
    uj["verdict"] = detail::verdict_to_j(st.report.unknowns[i].verdict);
    uj["class_count"] = st.report.unknowns[i].class_count;
    uj["det_class"] = hex_id(st.unknown_class_keys[i]);
    unk.push_back(std::move(uj));
  }
  j["unknowns"] = std::move(unk);
  j["unknowns_capped"] = st.report.unknowns_capped;
  detail::json refs = detail::json::array();
  for (const auto& r : st.report.refutations) {
    detail::json rj;
    rj["matrix"] = detail::matrix_to_j(r.matrix);
    rj["witness"] = detail::witness_to_j(r.witness);
    refs.push_back(std::move(rj));
  }
  j["refutations"] = std::move(refs);
  j["refutations_capped"] = st.report.refutations_capped;

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write checkpoint file " + path);
  out << j.dump(1) << "\n";
}

bool load_checkpoint(const std::string& path, const SearchConfig& cfg, MergeState& st,
                     std::uint64_t block_count) {
  std::ifstream in(path);
  if (!in) return false;
  std::stringstream buf;
  buf << in.rdbuf();
  detail::json j = detail::parse_text(buf.str());
  if (!j.contains("magic") || j["magic"] != kCheckpointMagic)
    throw ParseError("not a search checkpoint file: " + path);
  if (detail::need(j, "version").get<int>() != kCheckpointVersion)
    throw ContractError("checkpoint version mismatch; cannot resume");
  require_compatible(cfg, detail::search_config_from_j(detail::need(j, "config")));
  if (detail::need(j, "block_count").get<std::uint64_t>() != block_count)
    throw ContractError("checkpoint block partition disagrees; cannot resume");
  st.blocks_done = detail::need(j, "blocks_done").get<std::uint64_t>();
  st.report.counters = detail::counters_from_j(detail::need(j, "counters"));
  for (const auto& cj : detail::need(j, "accepted")) {
    GoodPairCandidate cand = detail::candidate_from_j(cj);
    st.accepted_idx.emplace(cand.canonical_id, st.report.accepted.size());
    st.report.accepted.push_back(std::move(cand));
  }
  for (const auto& uj : detail::need(j, "unknowns")) {
    UnknownRecord u;
    u.matrix = detail::matrix_from_j(detail::need(uj, "matrix"));
    u.verdict = detail::verdict_from_j(detail::need(uj, "verdict"));
    u.class_count = detail::need(uj, "class_count").get<std::uint64_t>();
    std::uint64_t key = std::stoull(detail::need(uj, "det_class").get<std::string>(), nullptr, 16);
    st.unknown_idx.emplace(key, st.report.unknowns.size());
    st.unknown_class_keys.push_back(key);
    st.report.unknowns.push_back(std::move(u));
  }
  st.report.unknowns_capped = detail::need(j, "unknowns_capped").get<bool>();
  for (const auto& rj : detail::need(j, "refutations")) {
    RefutationRecord r;
    r.matrix = detail::matrix_from_j(detail::need(rj, "matrix"));
    r.witness = detail::witness_from_j(detail::need(rj, "witness"));
    st.report.refutations.push_back(std::move(r));
  }
  st.report.refutations_capped = detail::need(j, "refutations_capped").get<bool>();
  return true;
}

SearchReport run_search(const SearchConfig& cfg, const std::string* checkpoint_path,
                        std::size_t checkpoint_every) {
  if (cfg.l > 8) throw ContractError("search supports at most 8 variables");
  std::size_t entries = search_entry_count(cfg.l, cfg.n);
  ObstructionReport obstruction = obstruction_check(cfg.l, cfg.n);
  if (obstruction.status != ObstructionStatus::Passes && !cfg.force)
    throw ContractError("pair (" + std::to_string(cfg.l) + ", " + std::to_string(cfg.n) +
                        ") is structurally infeasible: " + obstruction.detail +
                        "; set force to scan anyway");

  Context ctx;
  ctx.cfg = cfg;
  ctx.s = cfg.n - cfg.l;
  ctx.entries = entries;
  ctx.alphabet = build_alphabet(cfg.l, cfg.coeff_bound);
  ctx.full_mask = cfg.l >= 32 ? ~0u : (1u << cfg.l) - 1;
  for (std::size_t i = 0; i < ctx.s; ++i)
    for (std::size_t j = i; j < ctx.s; ++j) ctx.entry_pos.emplace_back(i, j);

  std::uint64_t h = kFnvOffset;
  hash_u64(h, cfg.seed);
  ctx.random_family = make_family(ctx.alphabet, random_points(cfg.l, cfg.numeric_points, h));
  ctx.structured_family = make_family(ctx.alphabet, structured_points(cfg.l));
  {
    std::int64_t entry_bound = 1;
    for (const auto& vals : ctx.random_family.vals)
      for (auto v : vals) entry_bound = std::max(entry_bound, std::abs(v));
    for (const auto& vals : ctx.structured_family.vals)
      for (auto v : vals) entry_bound = std::max(entry_bound, std::abs(v));
    long double minor_bound = 1;
    for (std::size_t k = 1; k <= ctx.s; ++k) minor_bound *= static_cast<long double>(k) * entry_bound;
    ctx.wide = minor_bound > 4.0e18L;
  }

  Partition part;
  std::uint64_t block_count;
  if (cfg.mode == SearchMode::Exhaustive) {
    part = make_partition(entries, ctx.alphabet.forms.size());
    block_count = part.block_count;
  } else {
    block_count = (cfg.random_samples + kRandomBlock - 1) / kRandomBlock;
  }

  MergeState st;
  st.report.config = cfg;
  st.report.obstruction = obstruction;
  if (checkpoint_path) load_checkpoint(*checkpoint_path, cfg, st, block_count);

  unsigned workers = resolve_workers(static_cast<unsigned>(cfg.workers));
  if (checkpoint_every == 0) checkpoint_every = 64;
  st.report.truncated = false;
  while (st.blocks_done < block_count) {
    if (cfg.max_candidates != 0 && st.report.counters.scanned >= cfg.max_candidates) {
      st.report.truncated = true;
      break;
    }
    std::size_t chunk = static_cast<std::size_t>(
        std::min<std::uint64_t>(block_count - st.blocks_done, checkpoint_every));
    if (cfg.max_candidates != 0) {
      // Stop within one block of the cap instead of one chunk.
      std::uint64_t per_block =
          cfg.mode == SearchMode::Exhaustive ? part.suffix_size : kRandomBlock;
      std::uint64_t remaining = cfg.max_candidates - st.report.counters.scanned;
      std::uint64_t need = (remaining + per_block - 1) / per_block;
      if (need < chunk) chunk = static_cast<std::size_t>(need);
    }
    std::vector<BlockResult> results(chunk);
    std::uint64_t base = st.blocks_done;
    parallel_for_indexed(chunk, workers, [&](std::size_t i) {
      if (cfg.mode == SearchMode::Exhaustive) {
        results[i] = run_block_exhaustive(ctx, part, base + i);
      } else {
        std::uint64_t lo = (base + i) * kRandomBlock;
        std::size_t count = static_cast<std::size_t>(
            std::min<std::uint64_t>(kRandomBlock, cfg.random_samples - lo));
        results[i] = run_block_random(ctx, base + i, count);
      }
    });
    for (auto& r : results) merge_block(ctx, st, std::move(r));
    st.blocks_done += chunk;
    if (checkpoint_path) save_checkpoint(*checkpoint_path, ctx, st, block_count);
  }
  st.report.exhaustive =
      cfg.mode == SearchMode::Exhaustive && !st.report.truncated && st.blocks_done == block_count;
  if (checkpoint_path) save_checkpoint(*checkpoint_path, ctx, st, block_count);
  return std::move(st.report);
}

}  // namespace

std::size_t search_block_count(const SearchConfig& config) {
  std::size_t entries = search_entry_count(config.l, config.n);
  if (config.mode == SearchMode::Randomized)
    return (config.random_samples + kRandomBlock - 1) / kRandomBlock;
  Alphabet a = build_alphabet(config.l, config.coeff_bound);
  return make_partition(entries, a.forms.size()).block_count;
}

SearchReport search(const SearchConfig& config) { return run_search(config, nullptr, 64); }

SearchReport search(const SearchConfig& config, const std::string& checkpoint_path,
                    std::size_t checkpoint_every) {
  return run_search(config, &checkpoint_path, checkpoint_every);
}

}  // namespace goodpair
