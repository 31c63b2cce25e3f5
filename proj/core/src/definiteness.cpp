#include "goodpair/definiteness.hpp"

#include <algorithm>
#include <functional>

#include "goodpair/errors.hpp"
#include "goodpair/pool.hpp"
#include "goodpair/univariate.hpp"

namespace goodpair {

std::string verdict_kind_str(VerdictKind k) {
  switch (k) {
    case VerdictKind::PositiveDefinite: return "PositiveDefinite";
    case VerdictKind::NegativeDefinite: return "NegativeDefinite";
    case VerdictKind::Indefinite: return "Indefinite";
    case VerdictKind::IdenticallyZero: return "IdenticallyZero";
    case VerdictKind::Unknown: return "Unknown";
  }
  throw ContractError("unreachable verdict kind");
}

VerdictKind verdict_kind_from_str(const std::string& s) {
  if (s == "PositiveDefinite") return VerdictKind::PositiveDefinite;
  if (s == "NegativeDefinite") return VerdictKind::NegativeDefinite;
  if (s == "Indefinite") return VerdictKind::Indefinite;
  if (s == "IdenticallyZero") return VerdictKind::IdenticallyZero;
  if (s == "Unknown") return VerdictKind::Unknown;
  throw ParseError("unknown verdict kind '" + s + "'");
}

namespace {

std::uint32_t required_homogeneous(const Poly& form) {
  if (form.var_count() == 0) throw ContractError("definiteness requires at least one variable");
  auto d = form.homogeneity_degree();
  if (!d) throw ContractError("definiteness requires a homogeneous form");
  return *d;
}

bool nonzero_point(const std::vector<Rational>& p) {
  for (const auto& c : p)
    if (c != 0) return true;
  return false;
}

IndefiniteWitness zero_witness(std::vector<Rational> point) {
  IndefiniteWitness w;
  w.point = std::move(point);
  w.value = Rational(0);
  return w;
}

// Primary point carries the negative value; opposite the positive one.
IndefiniteWitness pair_witness(std::vector<Rational> a, Rational va, std::vector<Rational> b,
                               Rational vb) {
  if (sign(va) > 0) {
    std::swap(a, b);
    std::swap(va, vb);
  }
  IndefiniteWitness w;
  w.point = std::move(a);
  w.value = std::move(va);
  w.opposite_point = std::move(b);
  w.opposite_value = std::move(vb);
  return w;
}

// First grid point in {0..d}^l (first variable fastest, skipping the origin)
// where the form does not vanish. A nonzero polynomial of degree d cannot
// vanish on the whole grid, so this always succeeds.
std::pair<std::vector<Rational>, Rational> first_nonzero_grid_value(const Poly& form,
                                                                    std::uint32_t degree,
                                                                    std::uint64_t* samples) {
  std::size_t l = form.var_count();
  std::vector<std::uint32_t> idx(l, 0);
  std::int64_t limit = static_cast<std::int64_t>(degree);
  while (true) {
    // advance odometer
    std::size_t v = 0;
    while (v < l) {
      if (idx[v] < static_cast<std::uint32_t>(limit)) {
        ++idx[v];
        break;
      }
      idx[v] = 0;
      ++v;
    }
    if (v == l) throw ContractError("nonzero form vanished on the whole grid");
    std::vector<Rational> pt(l);
    for (std::size_t i = 0; i < l; ++i) pt[i] = Rational(static_cast<long>(idx[i]));
    if (samples) ++*samples;
    Rational val = form.evaluate(pt);
    if (val != 0) return {std::move(pt), std::move(val)};
  }
}

}  // namespace

std::optional<DefinitenessVerdict> parity_shortcut(const Poly& form) {
  std::uint32_t d = required_homogeneous(form);
  if (form.is_zero()) {
    DefinitenessVerdict v;
    v.kind = VerdictKind::IdenticallyZero;
    return v;
  }
  if (d % 2 == 0) return std::nullopt;
  DefinitenessVerdict v;
  v.kind = VerdictKind::Indefinite;
  auto [pt, val] = first_nonzero_grid_value(form, d, &v.effort.samples);
  std::vector<Rational> neg(pt.size());
  for (std::size_t i = 0; i < pt.size(); ++i) neg[i] = -pt[i];
  // Odd degree: the value at -pt is exactly -val.
  v.witness = pair_witness(std::move(pt), val, std::move(neg), -val);
  return v;
}

std::optional<IndefiniteWitness> quick_refute(const Poly& form, const Budget& budget,
                                              std::uint64_t seed) {
  std::uint32_t d = required_homogeneous(form);
  std::size_t l = form.var_count();
  if (form.is_zero()) {
    std::vector<Rational> e1(l, Rational(0));
    e1[0] = 1;
    return zero_witness(std::move(e1));
  }
  if (d % 2 == 1) return parity_shortcut(form)->witness;

  std::vector<Rational> ref_point;
  Rational ref_value;
  auto consider = [&](std::vector<Rational> pt) -> std::optional<IndefiniteWitness> {
    Rational val = form.evaluate(pt);
    if (val == 0) return zero_witness(std::move(pt));
    if (ref_point.empty()) {
      ref_point = std::move(pt);
      ref_value = std::move(val);
      return std::nullopt;
    }
    if (sign(val) != sign(ref_value))
      return pair_witness(std::move(pt), val, ref_point, ref_value);
    return std::nullopt;
  };

  auto unit = [&](std::size_t v, int s) {
    std::vector<Rational> p(l, Rational(0));
    p[v] = s;
    return p;
  };
  for (std::size_t v = 0; v < l; ++v)
    if (auto w = consider(unit(v, 1))) return w;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j)
      for (int s : {1, -1}) {
        auto p = unit(i, 1);
        p[j] = s;
        if (auto w = consider(std::move(p))) return w;
      }
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j)
      for (std::size_t k = j + 1; k < l; ++k)
        for (int sj : {1, -1})
          for (int sk : {1, -1}) {
            auto p = unit(i, 1);
            p[j] = sj;
            p[k] = sk;
            if (auto w = consider(std::move(p))) return w;
          }
  if (l > 3) {
    std::vector<Rational> ones(l, Rational(1));
    if (auto w = consider(std::move(ones))) return w;
  }

  Rng rng(seed);
  for (std::uint32_t n = 0; n < budget.sample_count; ++n) {
    std::vector<Rational> p(l);
    bool all_zero = true;
    for (std::size_t v = 0; v < l; ++v) {
      p[v] = rng.uniform_rational(9, 4);
      if (p[v] != 0) all_zero = false;
    }
    if (all_zero) continue;
    if (auto w = consider(std::move(p))) return w;
  }
  return std::nullopt;
}

DefinitenessVerdict decide_two_vars(const Poly& form) {
  if (form.var_count() != 2) throw DimensionError("decide_two_vars requires two variables");
  std::uint32_t d = required_homogeneous(form);
  DefinitenessVerdict v;
  if (form.is_zero()) {
    v.kind = VerdictKind::IdenticallyZero;
    return v;
  }
  if (d % 2 == 1) return *parity_shortcut(form);

  UniPoly p = UniPoly::dehomogenize_second(form);
  Rational cd = form.coefficient(Monomial::unit(2, 1, d));  // value on the z2 axis
  auto roots = isolate_real_roots(p);

  if (roots.empty()) {
    int s = p.sign_at(Rational(0));
    if (sign(cd) == s) {
      v.kind = s > 0 ? VerdictKind::PositiveDefinite : VerdictKind::NegativeDefinite;
      SturmCertificate cert;
      cert.reference_sign = s;
      cert.dehomogenized = p.coeffs();
      cert.axis_coefficient = cd;
      cert.distinct_real_roots = 0;
      v.sturm = cert;
      return v;
    }
    v.kind = VerdictKind::Indefinite;
    if (cd == 0)
      v.witness = zero_witness({Rational(0), Rational(1)});
    else
      v.witness = pair_witness({Rational(0), Rational(1)}, cd, {Rational(1), Rational(0)},
                               p.evaluate(Rational(0)));
    return v;
  }

  // Real roots exist, so the form vanishes off the origin: Indefinite.
  v.kind = VerdictKind::Indefinite;
  Rational bound = p.cauchy_bound();
  Rational ref_val = p.evaluate(bound);  // beyond all roots, never zero
  int ref = sign(ref_val);

  for (const auto& iv : roots)
    if (iv.exact) {
      v.witness = zero_witness({Rational(1), iv.lo});
      return v;
    }
  if (cd == 0) {
    v.witness = zero_witness({Rational(0), Rational(1)});
    return v;
  }
  if (sign(cd) != ref) {
    v.witness = pair_witness({Rational(0), Rational(1)}, cd, {Rational(1), bound}, ref_val);
    return v;
  }
  for (const auto& iv : roots) {
    for (const Rational& e : {iv.lo, iv.hi}) {
      Rational val = p.evaluate(e);
      if (sign(val) != ref) {
        v.witness = pair_witness({Rational(1), e}, val, {Rational(1), bound}, ref_val);
        return v;
      }
    }
  }

  // Every root has even multiplicity and the nearby values keep the reference
  // sign. Probe each interval for a rational vanishing point; the vanishing
  // locus may be irrational, in which case no exact witness exists.
  UniPoly q = p.squarefree_part();
  for (const auto& iv : roots) {
    Rational a = iv.lo, b = iv.hi;
    int qa = q.sign_at(a);
    for (int round = 0; round < 48; ++round) {
      Rational s = simplest_rational_between(a, b);
      if (p.evaluate(s) == 0) {
        v.witness = zero_witness({Rational(1), s});
        return v;
      }
      Rational m = (a + b) / 2;
      if (m == s) m = (a + s) / 2;  // keep the probe fresh
      Rational qm = q.evaluate(m);
      if (qm == 0) {
        v.witness = zero_witness({Rational(1), m});
        return v;
      }
      if (sign(qm) == qa)
        a = m;
      else
        b = m;
      ++v.effort.samples;
    }
  }
  v.root_interval = RootIntervalEvidence{roots.front().lo, roots.front().hi};
  v.note =
      "form vanishes off the origin but the vanishing locus admits no rational "
      "point within the probe budget; evidence is a sign change of the "
      "squarefree dehomogenization";
  return v;
}

namespace {

struct FaceOutcome {
  enum class Status { Certified, Witness, Exhausted } status = Status::Certified;
  BoxTree tree;
  std::vector<Rational> witness_point;
  Rational witness_value;  // value of the original form
  Effort effort;
  std::string note;
};

struct FaceBuilder {
  const Poly& work;  // reference_sign * form, to be certified positive
  const Budget& budget;
  std::uint64_t box_budget;
  FaceOutcome out;
  bool aborted = false;

  // Returns the node index, or -1 after abort.
  std::int32_t build(std::vector<RatInterval>& box, std::uint32_t depth, std::size_t face_var) {
    if (aborted) return -1;
    if (out.effort.boxes >= box_budget) {
      out.status = FaceOutcome::Status::Exhausted;
      out.note = "box budget exhausted";
      aborted = true;
      return -1;
    }
    ++out.effort.boxes;
    out.effort.max_depth_reached = std::max(out.effort.max_depth_reached, depth);

    std::int32_t idx = static_cast<std::int32_t>(out.tree.nodes.size());
    out.tree.nodes.emplace_back();
    RatInterval range = interval_eval(work, box);
    if (sign(range.lo) > 0) {
      out.tree.nodes[idx].lower_bound = range.lo;
      return idx;
    }

    std::vector<Rational> mid(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) mid[i] = box[i].mid();
    ++out.effort.samples;
    Rational val = work.evaluate(mid);
    if (sign(val) <= 0) {
      out.status = FaceOutcome::Status::Witness;
      out.witness_point = std::move(mid);
      out.witness_value = val;  // caller restores the original sign
      aborted = true;
      return -1;
    }
    if (depth >= budget.max_depth) {
      out.status = FaceOutcome::Status::Exhausted;
      out.note = "depth budget exhausted";
      aborted = true;
      return -1;
    }

    // Split the widest free dimension, lowest index on ties.
    std::size_t dim = box.size();
    Rational best(-1);
    for (std::size_t i = 0; i < box.size(); ++i) {
      if (i == face_var) continue;
      Rational w = box[i].width();
      if (w > best) {
        best = w;
        dim = i;
      }
    }
    if (dim == box.size() || best == 0) {
      // Degenerate box that interval arithmetic cannot certify; for exact
      // arithmetic on a point box this cannot happen unless the value is <= 0,
      // which the midpoint test above catches.
      out.status = FaceOutcome::Status::Exhausted;
      out.note = "degenerate box";
      aborted = true;
      return -1;
    }
    Rational cut = box[dim].mid();
    out.tree.nodes[idx].split_dim = static_cast<int>(dim);
    out.tree.nodes[idx].split_at = cut;

    RatInterval saved = box[dim];
    box[dim] = {saved.lo, cut};
    std::int32_t lo_idx = build(box, depth + 1, face_var);
    box[dim] = {cut, saved.hi};
    std::int32_t hi_idx = build(box, depth + 1, face_var);
    box[dim] = saved;
    if (aborted) return -1;
    out.tree.nodes[idx].lo_child = lo_idx;
    out.tree.nodes[idx].hi_child = hi_idx;
    return idx;
  }
};

}  // namespace

DefinitenessVerdict certify_branch_bound(const Poly& form, const Budget& budget,
                                         unsigned workers) {
  std::uint32_t d = required_homogeneous(form);
  std::size_t l = form.var_count();
  DefinitenessVerdict v;
  if (form.is_zero()) {
    v.kind = VerdictKind::IdenticallyZero;
    return v;
  }
  if (d % 2 == 1) return *parity_shortcut(form);

  auto [ref_pt, ref_val] = first_nonzero_grid_value(form, d, &v.effort.samples);
  int sigma = sign(ref_val);
  Poly work = sigma > 0 ? form : -form;

  // Even degree: it suffices to certify every face z_v = +1 of the unit cube
  // since any nonzero point scales into one of them (or its mirror image,
  // which has the same value).
  std::vector<FaceOutcome> outcomes(l);
  std::uint64_t face_budget = std::max<std::uint64_t>(1, budget.max_boxes / l);
  parallel_for_indexed(l, workers, [&](std::size_t face) {
    FaceBuilder fb{work, budget, face_budget, {}, false};
    std::vector<RatInterval> box(l, RatInterval{Rational(-1), Rational(1)});
    box[face] = RatInterval::point(Rational(1));
    fb.build(box, 0, face);
    outcomes[face] = std::move(fb.out);
  });

  for (const auto& o : outcomes) {
    v.effort.boxes += o.effort.boxes;
    v.effort.samples += o.effort.samples;
    v.effort.max_depth_reached = std::max(v.effort.max_depth_reached, o.effort.max_depth_reached);
  }
  for (std::size_t face = 0; face < l; ++face) {
    if (outcomes[face].status == FaceOutcome::Status::Witness) {
      v.kind = VerdictKind::Indefinite;
      Rational val = sigma > 0 ? outcomes[face].witness_value : -outcomes[face].witness_value;
      if (val == 0)
        v.witness = zero_witness(outcomes[face].witness_point);
      else
        v.witness = pair_witness(outcomes[face].witness_point, val, ref_pt, ref_val);
      return v;
    }
  }
  for (std::size_t face = 0; face < l; ++face) {
    if (outcomes[face].status == FaceOutcome::Status::Exhausted) {
      v.kind = VerdictKind::Unknown;
      v.note = "face " + std::to_string(face + 1) + ": " + outcomes[face].note;
      return v;
    }
  }

  v.kind = sigma > 0 ? VerdictKind::PositiveDefinite : VerdictKind::NegativeDefinite;
  BoxCoverCertificate cert;
  cert.reference_sign = sigma;
  cert.faces.reserve(l);
  for (std::size_t face = 0; face < l; ++face)
    cert.faces.push_back({face, std::move(outcomes[face].tree)});
  v.boxes = std::move(cert);
  return v;
}

DefinitenessVerdict decide(const Poly& form, const Budget& budget, unsigned workers) {
  required_homogeneous(form);
  if (form.is_zero()) {
    DefinitenessVerdict v;
    v.kind = VerdictKind::IdenticallyZero;
    return v;
  }
  if (auto p = parity_shortcut(form)) return *p;
  if (auto w = quick_refute(form, budget)) {
    DefinitenessVerdict v;
    v.kind = VerdictKind::Indefinite;
    v.witness = std::move(w);
    return v;
  }
  if (form.var_count() == 2) return decide_two_vars(form);
  return certify_branch_bound(form, budget, workers);
}

bool verify_witness(const Poly& form, const IndefiniteWitness& w) {
  if (w.point.size() != form.var_count()) return false;
  if (!nonzero_point(w.point)) return false;
  if (form.evaluate(w.point) != w.value) return false;
  if (w.value == 0) return true;
  if (!w.opposite_point || !w.opposite_value) return false;
  if (w.opposite_point->size() != form.var_count()) return false;
  if (!nonzero_point(*w.opposite_point)) return false;
  if (form.evaluate(*w.opposite_point) != *w.opposite_value) return false;
  return sign(w.value) * sign(*w.opposite_value) == -1;
}

namespace {

bool verify_box_tree(const Poly& work, const FaceCertificate& face, std::size_t var_count) {
  if (face.face_var >= var_count) return false;
  const auto& nodes = face.tree.nodes;
  if (nodes.empty()) return false;
  std::vector<RatInterval> box(var_count, RatInterval{Rational(-1), Rational(1)});
  box[face.face_var] = RatInterval::point(Rational(1));
  std::size_t visited = 0;

  // Walk the tree, checking split geometry and recomputing leaf bounds.
  std::function<bool(std::int32_t)> walk = [&](std::int32_t idx) -> bool {
    if (idx < 0 || static_cast<std::size_t>(idx) >= nodes.size()) return false;
    ++visited;
    const auto& n = nodes[static_cast<std::size_t>(idx)];
    if (n.split_dim < 0) {
      RatInterval range = interval_eval(work, box);
      return sign(range.lo) > 0 && range.lo == n.lower_bound;
    }
    auto dim = static_cast<std::size_t>(n.split_dim);
    if (dim >= var_count || dim == face.face_var) return false;
    if (!(box[dim].lo < n.split_at && n.split_at < box[dim].hi)) return false;
    if (n.lo_child <= idx || n.hi_child <= idx) return false;  // forward edges only
    RatInterval saved = box[dim];
    box[dim] = {saved.lo, n.split_at};
    bool ok = walk(n.lo_child);
    box[dim] = {n.split_at, saved.hi};
    ok = ok && walk(n.hi_child);
    box[dim] = saved;
    return ok;
  };
  return walk(0) && visited == nodes.size();
}

}  // namespace

bool verify_certificate(const Poly& form, const DefinitenessVerdict& verdict) {
  switch (verdict.kind) {
    case VerdictKind::IdenticallyZero:
      return form.is_zero();
    case VerdictKind::Unknown:
      return true;  // no claim to check
    case VerdictKind::Indefinite: {
      if (verdict.witness) return verify_witness(form, *verdict.witness);
      if (verdict.root_interval) {
        if (form.var_count() != 2) return false;
        auto d = form.homogeneity_degree();
        if (!d || form.is_zero()) return false;
        UniPoly q = UniPoly::dehomogenize_second(form).squarefree_part();
        return q.sign_at(verdict.root_interval->lo) * q.sign_at(verdict.root_interval->hi) < 0;
      }
      return false;
    }
    case VerdictKind::PositiveDefinite:
    case VerdictKind::NegativeDefinite: {
      int want = verdict.kind == VerdictKind::PositiveDefinite ? 1 : -1;
      auto d = form.homogeneity_degree();
      if (!d || *d % 2 == 1 || form.is_zero()) return false;
      if (verdict.sturm) {
        const auto& c = *verdict.sturm;
        if (form.var_count() != 2) return false;
        if (c.reference_sign != want) return false;
        UniPoly p = UniPoly::dehomogenize_second(form);
        if (p.coeffs() != c.dehomogenized) return false;
        if (form.coefficient(Monomial::unit(2, 1, *d)) != c.axis_coefficient) return false;
        if (sign(c.axis_coefficient) != want) return false;
        if (p.sign_at(Rational(0)) != want) return false;
        SturmChain chain(p);
        return chain.count_distinct_real_roots() == 0 && c.distinct_real_roots == 0;
      }
      if (verdict.boxes) {
        const auto& c = *verdict.boxes;
        if (c.reference_sign != want) return false;
        if (c.faces.size() != form.var_count()) return false;
        Poly work = want > 0 ? form : -form;
        for (std::size_t face = 0; face < c.faces.size(); ++face) {
          if (c.faces[face].face_var != face) return false;
          if (!verify_box_tree(work, c.faces[face], form.var_count())) return false;
        }
        return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace goodpair
