#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "arcat/cli/dot.hpp"
#include "arcat/cli/job.hpp"
#include "arcat/complexes/ncomplex.hpp"
#include "arcat/modcat/almost_split.hpp"
#include "arcat/modcat/ar_quiver.hpp"
#include "arcat/modcat/decompose.hpp"
#include "arcat/modcat/representation.hpp"
#include "arcat/repcat/qrep.hpp"

namespace arcat::cli {

enum ExitCode : int { Success = 0, Usage = 1, Precondition = 2, Verification = 3 };

struct RunOptions {
  std::size_t cap = 16;
  std::size_t vertex_cap = 400;
  bool dot = false;
  std::optional<std::string> family_file;  // supplied:<file>; otherwise the closed AR quiver
};

template <class F>
struct Context {
  F field;
  BoundQuiver base;
  CategoryPtr<F> coeff;
  CategoryPtr<F> tensor;
};

template <class F>
Context<F> make_context(const F& field, const JobSpec& job) {
  auto base = job.base();
  auto coeff = representation_category(field, job.coefficient);
  auto tensor = rep_tensor_category(base, coeff);
  return {field, base, coeff, tensor};
}

namespace detail {

template <class F>
typename F::Elem parse_entry(const F& f, const std::string& w, int line) {
  auto slash = w.find('/');
  long long num = parse_integer(w.substr(0, slash), line);
  if (slash == std::string::npos) return f.from_int(num);
  long long den = parse_integer(w.substr(slash + 1), line);
  auto d = f.from_int(den);
  if (f.is_zero(d)) throw ParseError("zero denominator in '" + w + "'", line);
  return f.mul(f.from_int(num), f.inv(d));
}

template <class F>
Mat<F> parse_matrix(const F& f, const MatrixText& t, std::size_t rows, std::size_t cols) {
  Mat<F> m(f, rows, cols);
  if (t.rows.empty() && (rows == 0 || cols == 0)) return m;
  if (t.rows.size() != rows)
    throw ParseError("matrix for '" + t.arrow + "' at '" + t.at + "' needs " + std::to_string(rows) + " rows", t.line);
  for (std::size_t i = 0; i < rows; ++i) {
    if (t.rows[i].size() != cols)
      throw ParseError("matrix for '" + t.arrow + "' at '" + t.at + "' needs " + std::to_string(cols) + " columns",
                       t.line);
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = parse_entry(f, t.rows[i][j], t.line);
  }
  return m;
}

}  // namespace detail

/// The tensor-category module of a [module] section.
template <class F>
CModule<F> materialize(const Context<F>& ctx, const JobSpec& job, const ModuleText& text) {
  const auto& bq = ctx.base.quiver();
  const auto& aq = job.coefficient.quiver();
  const std::size_t na = aq.vertices().size();
  auto dims_at = [&](const std::string& v) {
    auto it = text.dims.find(v);
    return it == text.dims.end() ? std::vector<std::size_t>(na, 0) : it->second;
  };
  std::map<std::pair<std::string, std::string>, const MatrixText*> given;
  for (const auto& m : text.matrices)
    if (!given.emplace(std::make_pair(m.arrow, m.at), &m).second)
      throw ParseError("matrix for '" + m.arrow + "' at '" + m.at + "' given twice", m.line);
  std::vector<CModule<F>> mods;
  for (const auto& v : bq.vertices()) {
    auto dims = dims_at(v);
    std::map<std::string, Mat<F>> arrows;
    for (const auto& a : aq.arrows()) {
      auto it = given.find({a.id, v});
      if (it == given.end()) continue;
      arrows.emplace(a.id, detail::parse_matrix(ctx.field, *it->second, dims[aq.vertex_index(a.target)],
                                                dims[aq.vertex_index(a.source)]));
    }
    try {
      mods.push_back(module_from_representation(ctx.coeff, job.coefficient, dims, arrows));
    } catch (const VerificationError& e) {
      throw ParseError("coefficient data at '" + v + "': " + e.what(), text.line);
    }
  }
  std::map<std::string, ModuleMap<F>> maps;
  for (const auto& b : bq.arrows()) {
    const auto s = bq.vertex_index(b.source), t = bq.vertex_index(b.target);
    std::vector<Mat<F>> comps;
    for (std::size_t x = 0; x < na; ++x) {
      auto it = given.find({b.id, aq.vertices()[x]});
      const std::size_t r = mods[t].dims()[x], c = mods[s].dims()[x];
      comps.push_back(it == given.end() ? Mat<F>(ctx.field, r, c) : detail::parse_matrix(ctx.field, *it->second, r, c));
    }
    maps.emplace(b.id, ModuleMap<F>{mods[s], mods[t], std::move(comps)});
  }
  try {
    return phi(make_qrep(ctx.base, ctx.coeff, std::move(mods), std::move(maps)), ctx.tensor);
  } catch (const VerificationError& e) {
    throw ParseError(std::string("module data: ") + e.what(), text.line);
  }
}

namespace detail {

inline std::string yes(bool b) { return b ? "yes" : "no"; }

inline std::string describe_quiver(const BoundQuiver& bq) {
  std::ostringstream os;
  os << bq.quiver().vertices().size() << " vertices, " << bq.quiver().arrows().size() << " arrows, "
     << bq.ideal().generators().size() << " relations";
  return os.str();
}

inline std::string relations(const BoundQuiver& bq) {
  std::string s;
  for (const auto& g : bq.ideal().generators()) s += (s.empty() ? "" : " ") + g.to_string();
  return s.empty() ? "(none)" : s;
}

template <class F>
std::string summands(const CModule<F>& m) {
  std::string s;
  for (const auto& p : decompose_module(m)) s += (s.empty() ? "" : " + ") + p.module().dim_vector();
  return s.empty() ? "0" : s;
}

template <class F>
struct Family {
  std::vector<CModule<F>> modules;
  bool complete = false;
  std::string note;
};

template <class F>
Family<F> family_for(const Context<F>& ctx, const JobSpec& job, const RunOptions& opt) {
  Family<F> out;
  if (opt.family_file) {
    for (const auto& t : load_family(job, *opt.family_file)) out.modules.push_back(materialize(ctx, job, t));
    out.complete = true;
    out.note = "supplied family of " + std::to_string(out.modules.size()) + " modules";
    return out;
  }
  auto q = ar_quiver(ctx.tensor, opt.cap, opt.vertex_cap);
  out.modules = q.family();
  out.complete = q.closed;
  out.note = (q.closed ? "complete family of " : "incomplete family of ") + std::to_string(out.modules.size()) +
             " indecomposables (" + q.termination + ")";
  return out;
}

template <class F>
std::string report_line(const AlmostSplitReport<F>& r) {
  std::size_t ok = 0;
  for (const auto& c : r.checks) ok += c.pass();
  return "exact " + yes(r.exact) + ", non-split " + yes(r.non_split) + ", coverage " + yes(r.complete_coverage()) +
         ", family checks " + std::to_string(ok) + "/" + std::to_string(r.checks.size());
}

template <class F>
int cmd_info(const Context<F>& ctx, const JobSpec& job, std::ostream& out) {
  out << "field: " << ctx.field.name() << "\n";
  if (job.complex) out << "base: " << job.complex->describe() << "\n";
  out << "base quiver: " << describe_quiver(ctx.base) << "\n";
  out << "base relations: " << relations(ctx.base) << "\n";
  if (job.has_coefficient)
    out << "coefficient quiver: " << describe_quiver(job.coefficient) << "\n"
        << "coefficient relations: " << relations(job.coefficient) << "\n";
  else
    out << "coefficient: ground field\n";
  out << "tensor objects: " << ctx.tensor->size() << "\n";
  std::string bounds;
  for (const auto& [v, l] : ctx.base.nilpotency_bounds()) bounds += " " + v + ":" + std::to_string(l);
  out << "certificate: admissible, nilpotency bounds" << bounds << "\n";
  return Success;
}

template <class F>
int cmd_tensor(const Context<F>& ctx, std::ostream& out) {
  const auto& t = *ctx.tensor;
  out << "objects:";
  for (std::size_t i = 0; i < t.size(); ++i) out << " " << t.object(i);
  out << "\nhom dimensions (row x, column y: dim Hom(x,y)):\n";
  std::size_t total = 0;
  for (std::size_t x = 0; x < t.size(); ++x) {
    out << " ";
    for (std::size_t y = 0; y < t.size(); ++y) {
      out << " " << t.dim(x, y);
      total += t.dim(x, y);
    }
    out << "\n";
  }
  out << "total dimension: " << total << "\n";
  out << "certificate: unit and associativity laws verified\n";
  return Success;
}

template <class F>
int cmd_ar_quiver(const Context<F>& ctx, const JobSpec& job, const RunOptions& opt, std::ostream& out) {
  auto q = ar_quiver(ctx.tensor, opt.cap, opt.vertex_cap);
  std::vector<CModule<F>> family = q.family();
  bool family_ok = q.closed;
  std::string note = q.closed ? "complete family" : "incomplete family";
  if (opt.family_file) {
    family.clear();
    for (const auto& t : load_family(job, *opt.family_file)) family.push_back(materialize(ctx, job, t));
    family_ok = true;
    note = "supplied family of " + std::to_string(family.size()) + " modules";
  }
  std::size_t passed = 0;
  for (const auto& [z, s] : q.sequences) passed += verify_almost_split(s.seq, family).passed();
  const bool ok = family_ok && passed == q.sequences.size();
  std::vector<std::string> summary{
      "termination: " + q.termination,
      "certificate: " + std::to_string(passed) + "/" + std::to_string(q.sequences.size()) +
          " almost split sequences verified against " + note + (ok ? "" : " (FAILED)")};
  if (opt.dot) {
    out << export_dot(q, summary);
    return ok ? Success : Verification;
  }
  out << "indecomposables: " << q.vertices.size() << "\n";
  for (std::size_t i = 0; i < q.vertices.size(); ++i) {
    const auto& v = q.vertices[i];
    out << "  " << i << ": " << v.label() << (v.projective ? " projective" : "")
        << (v.injective ? " injective" : "") << "\n";
  }
  out << "irreducible maps:\n";
  for (const auto& e : q.edges) out << "  " << e.from << " -> " << e.to << " x" << e.multiplicity << "\n";
  out << "translates (Z -> tau Z):\n";
  for (const auto& [z, t] : q.tau) out << "  " << z << " -> " << t << "\n";
  for (const auto& s : summary) out << s << "\n";
  return ok ? Success : Verification;
}

template <class F>
int cmd_ass(const Context<F>& ctx, const JobSpec& job, const RunOptions& opt, std::ostream& out) {
  auto z = materialize(ctx, job, *job.module);
  auto ass = almost_split_sequence(z);
  auto fam = family_for(ctx, job, opt);
  auto report = verify_almost_split(ass.seq, fam.modules);
  const bool ok = fam.complete && report.passed();
  out << "end term: " << z.dim_vector() << "\n";
  out << "start term: " << ass.left().dim_vector() << "\n";
  out << "middle term: " << ass.middle().dim_vector() << " = " << summands(ass.middle()) << "\n";
  out << "ext dimension: " << ass.ext_dimension << "\n";
  out << "family: " << fam.note << "\n";
  out << "certificate: " << report_line(report) << (ok ? "" : " (FAILED)") << "\n";
  return ok ? Success : Verification;
}

template <class F>
int cmd_verify(const Context<F>& ctx, const RunOptions& opt, std::ostream& out) {
  auto q = ar_quiver(ctx.tensor, opt.cap, opt.vertex_cap);
  std::size_t duals = 0, trips = 0, seqs = 0;
  for (const auto& v : q.vertices) {
    auto dd = double_dual_iso(v.module);
    duals += is_natural(dd) && is_isomorphism(dd);
    auto r = psi(v.module, ctx.base, ctx.coeff);
    trips += phi(r, ctx.tensor) == v.module && psi(phi(r, ctx.tensor), ctx.base, ctx.coeff) == r;
  }
  auto family = q.family();
  for (const auto& [z, s] : q.sequences) seqs += verify_almost_split(s.seq, family).passed();
  const std::size_t n = q.vertices.size();
  const bool ok = q.closed && duals == n && trips == n && seqs == q.sequences.size();
  out << "indecomposables: " << n << "\n";
  out << "termination: " << q.termination << "\n";
  out << "duality D D = id: " << duals << "/" << n << "\n";
  out << "round trip phi/psi: " << trips << "/" << n << "\n";
  out << "almost split sequences: " << seqs << "/" << q.sequences.size() << "\n";
  out << "certificate: " << (ok ? "verified" : "FAILED") << "\n";
  return ok ? Success : Verification;
}

template <class F>
int cmd_approximate(const Context<F>& ctx, const JobSpec& job, std::ostream& out) {
  const auto& spec = *job.complex;
  auto z = from_module(spec, materialize(ctx, job, *job.module), ctx.coeff);
  std::vector<NComplex<F>> gens;
  for (std::size_t i = 0; i < spec.size(); ++i)
    for (std::size_t x = 0; x < ctx.coeff->size(); ++x)
      gens.push_back(interval_J(spec, spec.degree(i), yoneda_projective(ctx.coeff, x)));
  auto p = coil_epi(z);
  const bool coil_ok = p.map.is_natural() && p.map.is_vertexwise_surjective();
  auto a = right_approximation(z, gens);
  out << "complex: " << spec.describe() << ", total dimension " << z.total_dim() << "\n";
  out << "generators: " << gens.size() << " interval complexes of projectives\n";
  out << "approximation source dimension: " << a.source.total_dim() << " (" << a.generic_summands
      << " generic summands, " << a.coil_degrees.size() << " coil summands)\n";
  std::size_t onto = 0;
  for (const auto& c : a.certificates) onto += c.second;
  out << "coil epimorphism surjective: " << yes(coil_ok) << "\n";
  out << "onto on test objects: " << onto << "/" << a.certificates.size() << "\n";
  if (spec.cyclic_shape()) {
    auto sf = stalk_filtration_certificate(z);
    if (sf)
      out << "stalk filtration: " << sf->steps.size() << " steps, projective stalks " << yes(sf->projective_stalks)
          << "\n";
    else
      out << "stalk filtration: unknown (step cap)\n";
  }
  const bool ok = coil_ok && a.certified();
  out << "certificate: " << (ok ? "verified" : "FAILED") << "\n";
  return ok ? Success : Verification;
}

template <class F>
int cmd_roundtrip(const Context<F>& ctx, const JobSpec& job, std::ostream& out) {
  auto m = materialize(ctx, job, *job.module);
  auto r = psi(m, ctx.base, ctx.coeff);
  auto back = phi(r, ctx.tensor);
  const bool left = back == m;
  const bool right = psi(back, ctx.base, ctx.coeff) == r;
  out << "module: " << m.dim_vector() << "\n";
  out << "representation dimension: " << r.total_dim() << "\n";
  out << "phi(psi(M)) = M: " << yes(left) << "\n";
  out << "psi(phi(R)) = R: " << yes(right) << "\n";
  out << "certificate: " << (left && right ? "verified" : "FAILED") << "\n";
  return left && right ? Success : Verification;
}

}  // namespace detail

/// Runs the job's command, writing its report to `out`. Returns the exit code; errors of the
/// library propagate as exceptions.
template <class F>
int run_job(const F& field, const JobSpec& job, const RunOptions& opt, std::ostream& out) {
  auto ctx = make_context(field, job);
  const auto& c = job.command;
  if (c == "info") return detail::cmd_info(ctx, job, out);
  if (c == "tensor") return detail::cmd_tensor(ctx, out);
  if (c == "ar-quiver") return detail::cmd_ar_quiver(ctx, job, opt, out);
  if (c == "ass") return detail::cmd_ass(ctx, job, opt, out);
  if (c == "verify") return detail::cmd_verify(ctx, opt, out);
  if (c == "approximate") return detail::cmd_approximate(ctx, job, out);
  if (c == "roundtrip") return detail::cmd_roundtrip(ctx, job, out);
  throw ParseError("unknown command '" + c + "'");
}

/// Parses "p" or "Q" and runs the job over that field.
inline int run_with_field(const std::string& field, const JobSpec& job, const RunOptions& opt, std::ostream& out) {
  if (field == "Q") return run_job(Rationals(), job, opt, out);
  long long p = detail::parse_integer(field, 0);
  if (p < 2 || p >= (1LL << 31) || !PrimeField::is_prime(static_cast<std::uint32_t>(p)))
    throw ParseError("field must be a prime p < 2^31 or Q, got '" + field + "'");
  return run_job(PrimeField(static_cast<std::uint32_t>(p)), job, opt, out);
}

}  // namespace arcat::cli
