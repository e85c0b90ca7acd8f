// Acceptance run: one PASS/FAIL line per criterion; exit status 0 iff all pass.
// All arithmetic is exact over F_101, so every tolerance is zero.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "arcat/complexes/ncomplex.hpp"
#include "arcat/modcat/almost_split.hpp"
#include "arcat/modcat/ar_quiver.hpp"
#include "arcat/modcat/decompose.hpp"
#include "arcat/repcat/qrep.hpp"
#include "fixtures.hpp"

using namespace arcat;
using namespace fixtures;
using F = PrimeField;

namespace {

struct Setting {
  std::string name;
  BoundQuiver b;
  BoundQuiver a;
};

std::vector<Setting> settings() {
  BoundQuiver point(Quiver({"*"}, {}), MonomialIdeal());
  return {{"kA2 (x) k", a2(), point}, {"kA3/rad2 (x) kA2", a3_rad2(), a2()}, {"Z2 rad2 (x) kA2", z2_rad2(), a2()}};
}

CategoryPtr<F> field_cat() { return ground_field_category(F()); }

bool report(int id, bool ok, const std::string& detail) {
  std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << " | " << detail << std::endl;
  return ok;
}

template <class Fn>
bool guarded(int id, Fn fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return report(id, false, std::string("exception: ") + e.what());
  }
}

bool criterion1() {
  std::mt19937_64 rng(101);
  std::size_t trials = 0, rep_side = 0, module_side = 0;
  for (const auto& s : settings()) {
    auto coeff = rep(s.a);
    auto t = rep_tensor_category(s.b, coeff);
    for (int i = 0; i < 20; ++i, ++trials) {
      auto r = random_qrep(s.b, coeff, s.a, 3, rng);
      auto m = phi(r, t);
      rep_side += psi(m, s.b, coeff) == r;
      auto mc = conjugate(m, rng);
      module_side += phi(psi(mc, s.b, coeff), t) == mc;
    }
  }
  std::ostringstream os;
  os << "round trip on " << trials << " random representations (dims <= 3, 3 settings): psi(phi(R)) = R in "
     << rep_side << ", phi(psi(M)) = M in " << module_side << "; tolerance exact";
  return report(1, trials >= 50 && rep_side == trials && module_side == trials, os.str());
}

bool criterion2() {
  std::mt19937_64 rng(202);
  std::size_t covers = 0, covers_ok = 0, adj = 0, adj_ok = 0;
  for (const auto& s : settings()) {
    auto coeff = rep(s.a);
    for (int i = 0; i < 20; ++i) {
      auto r = random_qrep(s.b, coeff, s.a, 3, rng);
      auto c = induced_projective_cover(r);
      ++covers;
      covers_ok += c.map.is_natural() && c.map.is_vertexwise_surjective();
      auto p = random_module(coeff, s.a, 2, rng);
      for (const auto& v : s.b.quiver().vertices()) {
        auto rep_adj = check_adjunction(s.b, v, p, r);
        ++adj;
        adj_ok += rep_adj.passed() && rep_adj.rep_side == rep_adj.module_side;
      }
    }
  }
  std::ostringstream os;
  os << "covers from sums of f*_v(P_v) surjective by rank in " << covers_ok << "/" << covers
     << "; adjunction dimensions equal in " << adj_ok << "/" << adj << "; tolerance exact";
  return report(2, covers >= 50 && covers_ok == covers && adj >= 50 && adj_ok == adj, os.str());
}

bool criterion3() {
  bool ok = true;
  std::ostringstream os;
  for (const auto& s : settings()) {
    auto t = rep_tensor_category(s.b, rep(s.a));
    auto q = ar_quiver(t, 16);
    auto family = q.family();
    std::size_t non_proj = 0, verified = 0;
    for (const auto& v : q.vertices) {
      if (v.projective) continue;
      ++non_proj;
      auto ass = almost_split_sequence(v.module);
      verified += verify_almost_split(ass.seq, family).passed();
    }
    ok = ok && q.closed && non_proj > 0 && verified == non_proj;
    os << s.name << ": " << (q.closed ? "closed" : "open") << ", " << family.size() << " indecomposables, "
       << verified << "/" << non_proj << " sequences verified; ";
  }
  os << "tolerance exact";
  return report(3, ok, os.str());
}

bool criterion4() {
  const std::size_t m = 3, n = 2;
  auto spec = NComplexSpec::interval(n, m);
  auto bq = build_category(spec);
  auto k = field_cat();
  auto t = rep_tensor_category(bq, k);
  auto q = ar_quiver(t, 8);
  // oracle: interval modules [i, j] with j - i < n, projective exactly when j = min(i + n - 1, m)
  auto one = yoneda_projective(k, 0);
  std::size_t oracle = 0, oracle_proj = 0, matched = 0, proj_agree = 0;
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = i; j <= m && j - i + 1 <= n; ++j) {
      ++oracle;
      const bool proj = j == std::min(i + n - 1, m);
      oracle_proj += proj;
      std::vector<CModule<F>> comps;
      std::vector<ModuleMap<F>> diffs;
      for (long d = 1; d <= static_cast<long>(m); ++d)
        comps.push_back(d >= static_cast<long>(i) && d <= static_cast<long>(j) ? one : CModule<F>::zero(k));
      for (long d = 1; d < static_cast<long>(m); ++d)
        diffs.push_back(d >= static_cast<long>(i) && d < static_cast<long>(j) ? identity_map(one)
                                                                              : zero_map(comps[d - 1], comps[d]));
      auto mod = to_module(make_complex(spec, k, comps, diffs), t);
      for (const auto& v : q.vertices)
        if (indecomposable_isomorphism(mod, v.module)) {
          ++matched;
          proj_agree += v.projective == proj;
        }
    }
  std::size_t non_proj = 0, verified = 0;
  for (const auto& v : q.vertices) {
    if (v.projective) continue;
    ++non_proj;
    verified += verify_almost_split(almost_split_sequence(v.module).seq, q.family()).passed();
  }
  const bool ok = q.closed && q.vertices.size() == 5 && oracle == 5 && matched == oracle && proj_agree == oracle &&
                  non_proj == oracle - oracle_proj && verified == non_proj;
  std::ostringstream os;
  os << "C^3_2(mod k): " << q.vertices.size() << " indecomposables (oracle " << oracle << ", matched " << matched
     << "), non-projective " << non_proj << " (oracle " << oracle - oracle_proj
     << "; the criterion text states 3, but three indecomposable projectives leave 2), " << verified << "/"
     << non_proj << " sequences verified";
  return report(4, ok, os.str());
}

bool criterion5() {
  auto spec = NComplexSpec::cyclic(2);
  auto t = rep_tensor_category(build_category(spec), field_cat());
  auto q = ar_quiver(t, 8);
  // oracle: simples as cokernels of radical inclusions into the representables
  auto top = [&](std::size_t x) { return cokernel(radical_submodule(yoneda_projective(t, x))).target; };
  auto s0 = top(0), s1 = top(1);
  auto ass = almost_split_sequence(simple_module(t, 0));
  const bool shape = indecomposable_isomorphism(ass.right(), s0).has_value() &&
                     indecomposable_isomorphism(ass.left(), s1).has_value() &&
                     indecomposable_isomorphism(ass.middle(), yoneda_projective(t, 0)).has_value();
  auto rep_ = verify_almost_split(ass.seq, q.family());
  const bool ok = q.closed && q.vertices.size() == 4 && shape && rep_.passed();
  std::ostringstream os;
  os << "C_Z2(mod k): " << q.vertices.size() << " indecomposables; 0 -> S_1 -> P_0 -> S_0 -> 0 "
     << (shape ? "matches" : "does not match") << "; verification " << (rep_.passed() ? "passed" : "failed");
  return report(5, ok, os.str());
}

bool criterion6() {
  std::mt19937_64 rng(606);
  struct Source {
    CategoryPtr<F> cat;
    std::vector<CModule<F>> family;
  };
  std::vector<Source> sources;
  {
    auto bq = a3_rad2();
    auto c = rep(bq);
    sources.push_back({c, interval_modules(c, bq, 3, 2)});
  }
  {
    auto c = rep(z2_rad2());
    sources.push_back({c, ar_quiver(c, 8).family()});
  }
  {
    auto t = rep_tensor_category(build_category(NComplexSpec::cyclic(2)), rep(a2()));
    sources.push_back({t, ar_quiver(t, 12).family()});
  }
  std::size_t trials = 0, recovered = 0, certified = 0;
  for (const auto& src : sources)
    for (int i = 0; i < 20; ++i, ++trials) {
      std::vector<std::size_t> picks;
      std::vector<CModule<F>> parts;
      std::size_t total = 0;
      while (true) {
        std::size_t k = rng() % src.family.size();
        if (total + src.family[k].total_dim() > 8) break;
        picks.push_back(k);
        parts.push_back(src.family[k]);
        total += src.family[k].total_dim();
      }
      std::sort(picks.begin(), picks.end());
      auto m = conjugate(direct_sum(src.cat, parts).sum, rng);
      auto summands = decompose_module(m);
      std::vector<std::size_t> got;
      bool cert = true;
      auto sum = zero_map(m, m);
      for (const auto& s : summands) {
        std::size_t k = 0;
        while (k < src.family.size() && !indecomposable_isomorphism(src.family[k], s.module())) ++k;
        got.push_back(k);
        cert = cert && compose(s.projection, s.inclusion) == identity_map(s.module());
        auto e = compose(s.inclusion, s.projection);
        cert = cert && compose(e, e) == e;
        sum = sum + e;
      }
      cert = cert && sum == identity_map(m);
      std::sort(got.begin(), got.end());
      recovered += got == picks;
      certified += cert;
    }
  std::ostringstream os;
  os << trials << " random sums (total dim <= 8, 3 categories): multisets recovered " << recovered
     << ", idempotent certificates exact " << certified;
  return report(6, trials >= 50 && recovered == trials && certified == trials, os.str());
}

bool criterion7() {
  std::mt19937_64 rng(707);
  auto coeff = rep(a2());
  std::vector<NComplexSpec> shapes{NComplexSpec::interval(2, 3), NComplexSpec::interval(3, 4),
                                   NComplexSpec::window(2, -1, 2), NComplexSpec::window(3, 0, 3),
                                   NComplexSpec::cyclic(2), NComplexSpec::cyclic(3)};
  bool ok = true;
  std::ostringstream os;
  for (const auto& spec : shapes) {
    auto bq = build_category(spec);
    std::vector<NComplex<F>> gens;
    for (std::size_t i = 0; i < spec.size(); ++i)
      for (std::size_t x = 0; x < coeff->size(); ++x) {
        auto p = yoneda_projective(coeff, x);
        gens.push_back(interval_J(spec, spec.degree(i), p));
        gens.push_back(stalk(spec, spec.degree(i), p));
      }
    const long span = static_cast<long>(spec.relation_length()) - 1;
    std::size_t trials = 0, approx = 0, coil = 0, homotopy = 0;
    for (int t = 0; t < 20; ++t, ++trials) {
      NComplex<F> z{spec, random_qrep(bq, coeff, a2(), 2, rng)};
      NComplex<F> w{spec, random_qrep(bq, coeff, a2(), 2, rng)};
      approx += right_approximation(z, gens).certified();
      auto p = coil_epi(z);
      coil += p.map.is_natural() && p.map.is_vertexwise_surjective();
      Homotopy<F> s;
      for (std::size_t i = 0; i < spec.size(); ++i) {
        auto to = spec.index(spec.degree(i) - span);
        if (!to) {
          s.maps.push_back(std::nullopt);
          continue;
        }
        auto h = hom_space(w.rep.vertex_modules[i], z.rep.vertex_modules[*to]);
        s.maps.push_back(h.combine(random_mat(F(), h.dim(), 1, rng).column(0)));
      }
      RepMap<F> l{w.rep, z.rep, detail::homotopy_image(w, z, s)};
      auto fac = factor_null_homotopy(w, z, l, p);
      auto back = compose(p.map, fac.lift);
      bool zero = true;
      for (std::size_t i = 0; i < spec.size(); ++i) zero = zero && back.components[i] == l.components[i];
      homotopy += zero;
    }
    ok = ok && trials >= 20 && approx == trials && coil == trials && homotopy == trials;
    os << spec.describe() << ": approx " << approx << "/" << trials << ", coil " << coil << "/" << trials
       << ", residual 0 in " << homotopy << "/" << trials << "; ";
  }
  os << "tolerance exact";
  return report(7, ok, os.str());
}

bool criterion8() {
  std::mt19937_64 rng(808);
  std::vector<CModule<F>> corpus;
  for (const auto& s : settings()) {
    auto coeff = rep(s.a);
    auto t = rep_tensor_category(s.b, coeff);
    for (const auto& m : ar_quiver(t, 16).family()) corpus.push_back(m);
    for (int i = 0; i < 5; ++i) corpus.push_back(conjugate(phi(random_qrep(s.b, coeff, s.a, 3, rng), t), rng));
  }
  for (const auto& spec : {NComplexSpec::interval(2, 3), NComplexSpec::cyclic(2)})
    for (const auto& m : ar_quiver(rep_tensor_category(build_category(spec), field_cat()), 8).family())
      corpus.push_back(m);
  std::size_t ok = 0;
  for (const auto& m : corpus) {
    auto dd = double_dual_iso(m);
    ok += is_natural(dd) && is_isomorphism(dd) && dd.target.dims() == m.dims() && duality_D(m).dims() == m.dims();
  }
  std::ostringstream os;
  os << "D D = id certified on " << ok << "/" << corpus.size() << " modules, dimension vectors preserved";
  return report(8, ok == corpus.size(), os.str());
}

int cli_exit(const std::string& args) {
  const std::string cmd = std::string(ARCAT_CLI) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool criterion9() {
  std::size_t split = 0, split_rejected = 0, proj = 0, proj_rejected = 0;
  for (const auto& s : settings()) {
    auto t = rep_tensor_category(s.b, rep(s.a));
    auto q = ar_quiver(t, 16);
    auto family = q.family();
    for (std::size_t i = 0; i < family.size() && i < 4; ++i)
      for (std::size_t j = 0; j < family.size() && j < 4; ++j) {
        auto ds = direct_sum(t, {family[i], family[j]});
        ShortSequence<F> seq{ds.inclusions[0], ds.projections[1]};
        ++split;
        split_rejected += !verify_almost_split(seq, family).passed();
      }
    for (std::size_t x = 0; x < t->size(); ++x) {
      auto p = yoneda_projective(t, x);
      ++proj;
      bool tau_rejects = false, ass_rejects = false;
      try {
        tau(p);
      } catch (const PreconditionError&) {
        tau_rejects = true;
      }
      try {
        almost_split_sequence(p);
      } catch (const PreconditionError&) {
        ass_rejects = true;
      }
      proj_rejected += tau_rejects && ass_rejects;
    }
  }
  const int code = cli_exit(std::string(ARCAT_SAMPLES) + "/cyclic2_ass_projective.job");
  std::ostringstream os;
  os << "split sequences rejected " << split_rejected << "/" << split << "; projective targets rejected "
     << proj_rejected << "/" << proj << "; CLI exit code on a projective target " << code << " (expected 2)";
  return report(9, split_rejected == split && proj_rejected == proj && code == 2, os.str());
}

}  // namespace

int main() {
  bool all = true;
  all &= guarded(1, criterion1);
  all &= guarded(2, criterion2);
  all &= guarded(3, criterion3);
  all &= guarded(4, criterion4);
  all &= guarded(5, criterion5);
  all &= guarded(6, criterion6);
  all &= guarded(7, criterion7);
  all &= guarded(8, criterion8);
  all &= guarded(9, criterion9);
  std::cout << (all ? "acceptance: all criteria pass" : "acceptance: FAILED") << std::endl;
  return all ? 0 : 1;
}
