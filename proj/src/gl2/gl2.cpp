#include "galrep/gl2/gl2.hpp"

#include <algorithm>
#include <bitset>
#include <deque>
#include <numeric>

#include "galrep/error.hpp"

namespace galrep::gl2 {

namespace {

constexpr int kGroupOrder = 480;

using Membership = std::bitset<625>;

Membership membership(std::span<const MatGF5> elems) {
  Membership m;
  for (const auto& x : elems) m.set(static_cast<std::size_t>(x.code()));
  return m;
}

std::vector<MatGF5> conjugate_set(std::span<const MatGF5> s, const MatGF5& g) {
  const MatGF5 gi = g.inverse();
  std::vector<MatGF5> out;
  out.reserve(s.size());
  for (const auto& x : s) out.push_back(g * x * gi);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_normalized_by(std::span<const MatGF5> s, const MatGF5& g) {
  const Membership m = membership(s);
  const MatGF5 gi = g.inverse();
  for (const auto& x : s) {
    if (!m.test(static_cast<std::size_t>((g * x * gi).code()))) return false;
  }
  return true;
}

// Order of x modulo a normal subgroup given by its membership table.
int coset_order(const MatGF5& x, const Membership& sub) {
  MatGF5 acc = x;
  for (int k = 1; k <= kGroupOrder; ++k) {
    if (sub.test(static_cast<std::size_t>(acc.code()))) return k;
    acc = acc * x;
  }
  throw Error(ErrorCode::Internal, "coset order not found");
}

// Every subgroup of a small group, as the join-closure of its cyclic subgroups.
std::vector<std::vector<MatGF5>> all_subgroups(std::span<const MatGF5> group) {
  std::set<std::vector<MatGF5>> found;
  for (const auto& g : group) found.insert(subgroup_closure(std::span<const MatGF5>(&g, 1)));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<MatGF5>> current(found.begin(), found.end());
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        std::vector<MatGF5> gens = current[i];
        gens.insert(gens.end(), current[j].begin(), current[j].end());
        if (found.insert(subgroup_closure(gens)).second) grew = true;
      }
    }
  }
  return {found.begin(), found.end()};
}

int eigen_order_lcm(const F25Elem& x, const F25Elem& y) { return std::lcm(x.order(), y.order()); }

}  // namespace

MatGF5::MatGF5(long a, long b, long c, long d) : e_{mod5(a), mod5(b), mod5(c), mod5(d)} {
  if (det() == 0) throw Error(ErrorCode::InvalidArgument, "singular matrix " + to_string());
}

MatGF5 operator*(const MatGF5& x, const MatGF5& y) {
  return MatGF5(x.a() * y.a() + x.b() * y.c(), x.a() * y.b() + x.b() * y.d(), x.c() * y.a() + x.d() * y.c(),
                x.c() * y.b() + x.d() * y.d());
}

MatGF5 MatGF5::inverse() const {
  // det^-1 = det^3 in F_5.
  const int di = mod5(det() * det() * det());
  return MatGF5(d() * di, -b() * di, -c() * di, a() * di);
}

MatGF5 MatGF5::pow(unsigned long k) const {
  MatGF5 result = identity();
  MatGF5 base = *this;
  while (k > 0) {
    if (k & 1UL) result = result * base;
    base = base * base;
    k >>= 1UL;
  }
  return result;
}

std::string MatGF5::to_string() const {
  return "[[" + std::to_string(e_[0]) + "," + std::to_string(e_[1]) + "],[" + std::to_string(e_[2]) + "," +
         std::to_string(e_[3]) + "]]";
}

CharPoly2 CharPoly2::make(long b, long d) {
  if (mod5(d) == 0) throw Error(ErrorCode::InvalidArgument, "determinant must be a unit mod 5");
  return CharPoly2{mod5(b), mod5(d)};
}

F25Elem F25Elem::inverse() const {
  if (is_zero()) throw Error(ErrorCode::InvalidArgument, "zero has no inverse in F_25");
  // x^-1 = x^23
  F25Elem r(1, 0);
  for (int i = 0; i < 23; ++i) r = r * *this;
  return r;
}

int F25Elem::order() const {
  if (is_zero()) throw Error(ErrorCode::InvalidArgument, "zero has no multiplicative order");
  F25Elem acc = *this;
  for (int k = 1; k <= 24; ++k) {
    if (acc == F25Elem(1, 0)) return k;
    acc = acc * *this;
  }
  throw Error(ErrorCode::Internal, "F_25 order exceeds 24");
}

std::pair<F25Elem, F25Elem> sqrt_in_f25(int a) {
  a = mod5(a);
  // Squares mod 5 are {0, 1, 4}; the non-squares {2, 3} are 2 * {1, 4}, so
  // sqrt(2 k^2) = k t.
  for (int k = 0; k < 5; ++k) {
    if (mod5(k * k) == a) return {F25Elem(k, 0), F25Elem(-k, 0)};
    if (mod5(F25Elem::kNonResidue * k * k) == a) return {F25Elem(0, k), F25Elem(0, -k)};
  }
  throw Error(ErrorCode::Internal, "no square root in F_25");
}

int element_order(const MatGF5& m) {
  MatGF5 acc = m;
  for (int k = 1; k <= kGroupOrder; ++k) {
    if (acc == MatGF5::identity()) return k;
    acc = acc * m;
  }
  throw Error(ErrorCode::Internal, "element order exceeds group order");
}

std::span<const MatGF5> all_elements() {
  static const std::vector<MatGF5> elems = [] {
    std::vector<MatGF5> v;
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b)
        for (int c = 0; c < 5; ++c)
          for (int d = 0; d < 5; ++d)
            if (mod5(a * d - b * c) != 0) v.emplace_back(a, b, c, d);
    return v;
  }();
  return elems;
}

std::set<int> orders_for_charpoly(CharPoly2 c) {
  std::set<int> out;
  for (const auto& m : all_elements()) {
    if (m.trace() == c.b && m.det() == c.d) out.insert(element_order(m));
  }
  return out;
}

std::set<int> orders_for_charpoly_analytic(CharPoly2 c) {
  // Roots of X^2 - bX + d are (b +- sqrt(b^2 - 4d)) / 2, and 2^-1 = 3 in F_5.
  const auto [s1, s2] = sqrt_in_f25(c.discriminant());
  const F25Elem half(3, 0);
  const F25Elem l1 = (F25Elem(c.b, 0) + s1) * half;
  const F25Elem l2 = (F25Elem(c.b, 0) + s2) * half;
  const int e = eigen_order_lcm(l1, l2);
  if (c.discriminant() == 0) return {e, 5 * e};  // scalar or a single Jordan block
  return {e};
}

std::set<int> pgl_orders_for_charpoly(CharPoly2 c) {
  std::set<int> out;
  for (const auto& m : all_elements()) {
    if (m.trace() != c.b || m.det() != c.d) continue;
    MatGF5 acc = m;
    for (int k = 1; k <= kGroupOrder; ++k) {
      if (acc.is_scalar()) {
        out.insert(k);
        break;
      }
      acc = acc * m;
    }
  }
  return out;
}

std::map<CharPoly2, int> charpoly_class_sizes() {
  std::map<CharPoly2, int> sizes;
  for (const auto& m : all_elements()) ++sizes[CharPoly2{m.trace(), m.det()}];
  return sizes;
}

std::vector<MatGF5> subgroup_closure(std::span<const MatGF5> generators) {
  Membership seen;
  std::vector<MatGF5> elems{MatGF5::identity()};
  seen.set(static_cast<std::size_t>(MatGF5::identity().code()));
  std::deque<MatGF5> queue{MatGF5::identity()};
  while (!queue.empty()) {
    MatGF5 x = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      MatGF5 y = x * g;
      if (!seen.test(static_cast<std::size_t>(y.code()))) {
        seen.set(static_cast<std::size_t>(y.code()));
        elems.push_back(y);
        queue.push_back(y);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<std::vector<MatGF5>> conjugacy_classes() {
  Membership assigned;
  std::vector<std::vector<MatGF5>> classes;
  for (const auto& x : all_elements()) {
    if (assigned.test(static_cast<std::size_t>(x.code()))) continue;
    std::set<MatGF5> cls;
    for (const auto& g : all_elements()) cls.insert(g * x * g.inverse());
    for (const auto& y : cls) assigned.set(static_cast<std::size_t>(y.code()));
    classes.emplace_back(cls.begin(), cls.end());
  }
  return classes;
}

nlohmann::json GroupFactsReport::to_json() const {
  nlohmann::json j;
  j["field_model"] = "F_25 = F_5[t]/(t^2 - 2)";
  j["generation"] = {{"passed", order24_with_order5_generates},
                     {"order24_classes", order24_classes},
                     {"order5_elements", order5_elements},
                     {"pairs_checked", pairs_checked},
                     {"smallest_closure", smallest_pair_closure}};
  j["borel"] = {{"passed", borel_structure},
                {"H_order", borel_order},
                {"J_order", j_order},
                {"J_normal_in_H", j_normal_in_borel},
                {"quotient_order", quotient_order},
                {"quotient_generator_order", quotient_generator_order}};
  j["no_normal_subgroup_in_J"] = {{"passed", no_normal_subgroup_in_j},
                                  {"subgroups_of_J", j_subgroups},
                                  {"subgroup_orders", j_subgroup_orders}};
  j["borel_normalizer"] = {{"passed", borel_self_normalizing},
                           {"normalizer_order", borel_normalizer_order},
                           {"conjugates", borel_conjugates},
                           {"gap", "uniqueness of the conjugacy class of order-80 subgroups is checked only "
                                   "through the conjugate count of the Borel subgroup"}};
  j["generated_group_order"] = generated_group_order;
  j["passed"] = all_passed();
  return j;
}

GroupFactsReport verify_group_facts() {
  GroupFactsReport r;
  const auto G = all_elements();

  // (a)
  std::vector<MatGF5> order24_reps;
  for (const auto& cls : conjugacy_classes()) {
    if (element_order(cls.front()) == 24) order24_reps.push_back(cls.front());
  }
  std::vector<MatGF5> order5;
  for (const auto& m : G) {
    if (element_order(m) == 5) order5.push_back(m);
  }
  r.order24_classes = static_cast<int>(order24_reps.size());
  r.order5_elements = static_cast<int>(order5.size());
  r.smallest_pair_closure = kGroupOrder;
  for (const auto& g : order24_reps) {
    for (const auto& h : order5) {
      const MatGF5 gens[] = {g, h};
      const int size = static_cast<int>(subgroup_closure(gens).size());
      r.smallest_pair_closure = std::min(r.smallest_pair_closure, size);
      ++r.pairs_checked;
    }
  }
  r.order24_with_order5_generates =
      r.pairs_checked > 0 && !order5.empty() && r.smallest_pair_closure == kGroupOrder;

  // (b)
  const MatGF5 borel_gens[] = {MatGF5::diag(2, 1), MatGF5(1, 1, 0, 1), MatGF5::diag(1, 2)};
  const auto H = subgroup_closure(borel_gens);
  std::vector<MatGF5> J;
  for (const auto& h : H) {
    if (h.d() == 1) J.push_back(h);
  }
  const Membership j_members = membership(J);
  r.borel_order = static_cast<int>(H.size());
  r.j_order = static_cast<int>(J.size());
  r.j_normal_in_borel = std::all_of(H.begin(), H.end(), [&](const MatGF5& h) { return is_normalized_by(J, h); });
  r.quotient_order = r.borel_order / std::max(r.j_order, 1);
  for (const auto& h : H) r.quotient_generator_order = std::max(r.quotient_generator_order, coset_order(h, j_members));
  const bool j_is_subgroup = subgroup_closure(J).size() == J.size();
  r.borel_structure = r.borel_order == 80 && r.j_order == 20 && j_is_subgroup && r.j_normal_in_borel &&
                      r.quotient_order == 4 && r.quotient_generator_order == 4;

  // Standard generators of G.
  const MatGF5 g_gens[] = {MatGF5::companion(4, 2), MatGF5(1, 1, 0, 1)};
  r.generated_group_order = static_cast<int>(subgroup_closure(g_gens).size());

  // (c)
  const auto subs = all_subgroups(J);
  r.j_subgroups = static_cast<int>(subs.size());
  bool none_normal = r.generated_group_order == kGroupOrder;
  for (const auto& s : subs) {
    r.j_subgroup_orders.push_back(static_cast<int>(s.size()));
    if (s.size() == 1) continue;
    const bool normal = std::all_of(std::begin(g_gens), std::end(g_gens),
                                    [&](const MatGF5& g) { return is_normalized_by(s, g); });
    if (normal) none_normal = false;
  }
  std::sort(r.j_subgroup_orders.begin(), r.j_subgroup_orders.end());
  r.no_normal_subgroup_in_j = none_normal;

  // (d)
  std::set<std::vector<MatGF5>> conjugates;
  for (const auto& g : G) {
    if (is_normalized_by(H, g)) ++r.borel_normalizer_order;
    conjugates.insert(conjugate_set(H, g));
  }
  r.borel_conjugates = static_cast<int>(conjugates.size());
  r.borel_self_normalizing = r.borel_normalizer_order == 80 && r.borel_conjugates == 6;
  return r;
}

}  // namespace galrep::gl2
