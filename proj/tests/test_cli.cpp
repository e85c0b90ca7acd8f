#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "arcat/cli/dot.hpp"
#include "arcat/cli/job.hpp"
#include "arcat/cli/run.hpp"

using namespace arcat;
using namespace arcat::cli;
using F = PrimeField;

namespace {

const char* kA2 = R"(
[quiver]
vertices: 1 2
a: 1 -> 2

[command]
info
)";

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

int run_text(const std::string& job_text, std::string& out, RunOptions opt = {}) {
  std::ostringstream os;
  auto job = load_spec_text(job_text);
  int code = run_with_field(job.field.value_or("101"), job, opt, os);
  out = os.str();
  return code;
}

}  // namespace

TEST(LoadSpec, MinimalA2) {
  auto job = load_spec_text(kA2);
  ASSERT_TRUE(job.quiver.has_value());
  EXPECT_EQ(job.quiver->quiver().vertices().size(), 2u);
  EXPECT_EQ(job.quiver->quiver().arrows().size(), 1u);
  EXPECT_EQ(job.command, "info");
  EXPECT_FALSE(job.has_coefficient);
}

TEST(LoadSpec, LengthOneGeneratorRejected) {
  std::string text = "[quiver]\nvertices: 1 2\na: 1 -> 2\n[ideal]\na\n[command]\ninfo\n";
  try {
    load_spec_text(text);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos);
  }
}

TEST(LoadSpec, CyclicWithCoefficient) {
  auto job = load_spec_text("[complex]\ncyclic 2\n[coefficient]\nvertices: x y\nb: x -> y\n[command]\ntensor\n");
  EXPECT_EQ(job.tensor_objects(), 4u);
  auto ctx = make_context(F(), job);
  EXPECT_EQ(ctx.tensor->size(), 4u);
}

TEST(LoadSpec, ErrorsCarryLines) {
  auto line_of = [](const std::string& text) {
    try {
      load_spec_text(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("[quiver]\nvertices: 1 2\na: 1 -> 3\n[command]\ninfo\n"), 3);
  EXPECT_EQ(line_of("[quiver]\nvertices: 1 1\n[command]\ninfo\n"), 2);
  EXPECT_EQ(line_of("[quiver]\nvertices: 1 2\na: 1 -> 2\n[command]\ninfo\ntensor\n"), 6);
  EXPECT_EQ(line_of("[quiver]\nvertices: 1\n[command]\nfly\n"), 4);
  EXPECT_EQ(line_of("[quiver]\nvertices: 1\n[bogus]\n"), 3);
  EXPECT_EQ(line_of("[quiver]\nvertices: 1 2\na: 1 -> 2\nb: 1 -> 2\n[ideal]\nb a\n[command]\ninfo\n"), 6);
  EXPECT_EQ(line_of("[quiver]\nvertices: 1 2\na: 1 -> 2\n[command]\nass\n[module]\ndims 1: 1\nc: 1\n"), 8);
  EXPECT_THROW(load_spec_text("[quiver]\nvertices: 1\n"), ParseError);
  EXPECT_THROW(load_spec_text("[complex]\ncyclic 2\n[quiver]\nvertices: 1\n[command]\ninfo\n"), ParseError);
}

TEST(LoadSpec, NotAdmissible) {
  // a loop without relations has paths of every length
  EXPECT_THROW(load_spec_text("[quiver]\nvertices: v\nx: v -> v\n[command]\ninfo\n"), PreconditionError);
}

TEST(Materialize, MatchesRepresentation) {
  auto job = load_spec_text(
      "[quiver]\nvertices: 1 2\na: 1 -> 2\n[command]\nroundtrip\n[module]\ndims 1: 2\ndims 2: 1\na: 1 1\n");
  auto ctx = make_context(F(), job);
  auto m = materialize(ctx, job, *job.module);
  EXPECT_EQ(m.dims(), (std::vector<std::size_t>{2, 1}));
  auto ref = module_from_representation(representation_category(F(), job.base()), job.base(), {2, 1},
                                        {{"a", Mat<F>::from_rows(F(), {{1, 1}})}});
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) EXPECT_EQ(m.actions(x, y), ref.actions(x, y));
}

TEST(Materialize, RejectsNonNaturalData) {
  auto job = load_spec_text(
      "[quiver]\nvertices: 1 2\na: 1 -> 2\n[coefficient]\nvertices: x y\nb: x -> y\n[command]\nroundtrip\n"
      "[module]\ndims 1: 1 1\ndims 2: 1 1\nb @ 1: 1\na @ y: 1\n");
  auto ctx = make_context(F(), job);
  EXPECT_THROW(materialize(ctx, job, *job.module), ParseError);
}

TEST(Materialize, FractionsOverQ) {
  auto job = load_spec_text(
      "[field]\nQ\n[quiver]\nvertices: 1 2\na: 1 -> 2\n[command]\nroundtrip\n[module]\ndims 1: 1\ndims 2: 1\na: 1/2\n");
  std::ostringstream os;
  EXPECT_EQ(run_with_field("Q", job, {}, os), Success);
  auto ctx = make_context(Rationals(), job);
  auto m = materialize(ctx, job, *job.module);
  EXPECT_EQ(psi(m, ctx.base, ctx.coeff).arrow("a").at(0)(0, 0), mpq_class(1, 2));
}

TEST(ExportDot, A2) {
  auto cat = representation_category(F(), load_spec_text(kA2).base());
  auto dot = export_dot(ar_quiver(cat, 4));
  EXPECT_EQ(count(dot, "[label=\"("), 3u);
  EXPECT_EQ(count(dot, "->"), 3u);
  EXPECT_EQ(count(dot, "style=dashed"), 1u);
}

TEST(ExportDot, EmptyGraph) {
  ARQuiver<F> q;
  auto dot = export_dot(q);
  EXPECT_EQ(dot, "digraph ar_quiver {\n  rankdir=LR;\n  node [shape=box];\n}\n");
}

TEST(ExportDot, CyclicOverField) {
  auto job = load_spec_text("[complex]\ncyclic 2\n[command]\nar-quiver\n");
  auto ctx = make_context(F(), job);
  auto dot = export_dot(ar_quiver(ctx.tensor, 8));
  EXPECT_EQ(count(dot, "[label=\"("), 4u);
  EXPECT_EQ(count(dot, "style=dashed"), 2u);
}

TEST(Run, Deterministic) {
  const std::string text = "[complex]\ncyclic 2\n[coefficient]\nvertices: x y\nb: x -> y\n[command]\nar-quiver\n";
  RunOptions opt;
  opt.dot = true;
  std::string a, b;
  EXPECT_EQ(run_text(text, a, opt), Success);
  EXPECT_EQ(run_text(text, b, opt), Success);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("// certificate:"), std::string::npos);
}

TEST(Run, Commands) {
  std::string out;
  EXPECT_EQ(run_text(kA2, out), Success);
  EXPECT_NE(out.find("tensor objects: 2"), std::string::npos);
  EXPECT_EQ(run_text("[complex]\ninterval 2 3\n[command]\nverify\n", out), Success);
  EXPECT_NE(out.find("certificate: verified"), std::string::npos);
  EXPECT_EQ(run_text("[complex]\ncyclic 2\n[command]\nass\n[module]\ndims 0: 1\n", out), Success);
  EXPECT_NE(out.find("start term: (0,1)"), std::string::npos);
}

TEST(Run, ProjectiveTargetIsPrecondition) {
  std::string out;
  EXPECT_THROW(run_text("[complex]\ncyclic 2\n[command]\nass\n[module]\ndims 0: 1\ndims 1: 1\na0: 1\n", out),
               PreconditionError);
}

TEST(Run, IncompleteFamilyFailsVerification) {
  // with a dimension cap of 1 the AR quiver of kA_2 misses P_1, so the family is incomplete
  std::string out;
  RunOptions opt;
  opt.cap = 1;
  EXPECT_EQ(run_text("[quiver]\nvertices: 1 2\na: 1 -> 2\n[command]\nass\n[module]\ndims 1: 1\n", out, opt),
            Verification);
  EXPECT_NE(out.find("FAILED"), std::string::npos);
}

TEST(Run, SuppliedFamily) {
  const std::string job_text = "[quiver]\nvertices: 1 2\na: 1 -> 2\n[command]\nass\n[module]\ndims 1: 1\n";
  auto job = load_spec_text(job_text);
  auto path = std::string(testing::TempDir()) + "family.txt";
  {
    std::ofstream f(path);
    f << "[module]\ndims 1: 1\n[module]\ndims 2: 1\n[module]\ndims 1: 1\ndims 2: 1\na: 1\n";
  }
  RunOptions opt;
  opt.family_file = path;
  std::ostringstream os;
  EXPECT_EQ(run_job(F(), job, opt, os), Success);
  {
    std::ofstream f(path);
    f << "[module]\ndims 1: 1\n";
  }
  std::ostringstream os2;
  EXPECT_EQ(run_job(F(), job, opt, os2), Verification);
}
