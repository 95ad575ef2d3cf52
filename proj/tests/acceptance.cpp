// End-to-end acceptance gate. Each advertised property runs as one numbered
// criterion printing a single pass/fail line; the exit code is the number of
// failures. argv[1] names the CLI binary, used by the determinism criterion.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <mukaikit/json_io.hpp>
#include <mukaikit/mukaikit.hpp>

#include "oracles.hpp"

namespace {

using namespace mukai;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

int failures = 0;

void criterion(int num, const std::string& title, const std::function<std::string()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  try {
    std::string note = body();
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d: pass  %s (%s, %.2fs)\n", num, title.c_str(), note.c_str(), sec);
  } catch (const std::exception& e) {
    ++failures;
    std::printf("criterion %2d: FAIL  %s: %s\n", num, title.c_str(), e.what());
  }
  std::fflush(stdout);
}

// ---- shared fixtures ----------------------------------------------------------------

SurfaceData k3_rank2() {
  SurfaceData s;
  s.rank = 2;
  s.gram = {{Rat(2), Rat(0)}, {Rat(0), Rat(-2)}};
  s.canonical = {Rat(0), Rat(0)};
  s.chiO = 2;
  return s;
}

SurfaceData hyperbolic_a1() {
  SurfaceData s;
  s.rank = 2;
  s.gram = {{Rat(0), Rat(4)}, {Rat(4), Rat(0)}};
  s.canonical = {Rat(0), Rat(0)};
  s.chiO = 2;
  return s;
}

SurfaceData golden_a2() {
  SurfaceData s;
  s.rank = 3;
  s.gram = {{Rat(0), Rat(3), Rat(3)}, {Rat(3), Rat(0), Rat(3)}, {Rat(3), Rat(3), Rat(0)}};
  s.canonical = VecQ(3, Rat(0));
  s.chiO = 2;
  return s;
}

SurfaceData mixed_rank3() {
  SurfaceData s;
  s.rank = 3;
  s.gram = {{Rat(2), Rat(0), Rat(0)}, {Rat(0), Rat(-2), Rat(0)}, {Rat(0), Rat(0), Rat(-2)}};
  s.canonical = VecQ(3, Rat(0));
  s.chiO = 2;
  return s;
}

SurfaceData rho5_double() {
  SurfaceData s;
  s.rank = 5;
  s.gram = {{Rat(0), Rat(3), Rat(3), Rat(2), Rat(2)},
            {Rat(3), Rat(0), Rat(3), Rat(2), Rat(2)},
            {Rat(3), Rat(3), Rat(0), Rat(2), Rat(2)},
            {Rat(2), Rat(2), Rat(2), Rat(0), Rat(3)},
            {Rat(2), Rat(2), Rat(2), Rat(3), Rat(0)}};
  s.canonical = VecQ(5, Rat(0));
  s.chiO = 2;
  return s;
}

SurfaceData rank_one() {
  SurfaceData s;
  s.rank = 1;
  s.gram = {{Rat(4)}};
  s.canonical = {Rat(0)};
  s.chiO = 2;
  return s;
}

SurfaceData plane_like() {
  SurfaceData s;
  s.rank = 1;
  s.gram = {{Rat(1)}};
  s.canonical = {Rat(-3)};
  s.chiO = 1;
  return s;
}

SurfaceData k3_with_block(const MatQ& block) {
  SurfaceData s;
  s.rank = block.size() + 1;
  s.gram.assign(s.rank, VecQ(s.rank, Rat(0)));
  s.gram[0][0] = 2;
  for (std::size_t i = 0; i < block.size(); ++i)
    for (std::size_t j = 0; j < block.size(); ++j) s.gram[i + 1][j + 1] = block[i][j];
  s.canonical = VecQ(s.rank, Rat(0));
  s.chiO = 2;
  return s;
}

std::vector<VecQ> coordinate_simples(const SurfaceData& s) {
  std::vector<VecQ> out;
  for (std::size_t i = 1; i < s.rank; ++i) {
    VecQ e(s.rank, Rat(0));
    e[i] = 1;
    out.push_back(e);
  }
  return out;
}

/// Integral class of square -2: (1, c, (c^2)/2 + 1) on an even lattice.
CohClass random_minus_two(oracle::Rng& rng, const SurfaceData& s, long b) {
  VecQ c(s.rank);
  for (auto& e : c) e = Rat(rng.pick(-b, b));
  return {1, c, ns_pair(s, c, c) / 2 + 1};
}

std::vector<std::pair<VecQ, VecQ>> wall_keys(const SurfaceData& s, const WallFamily& fam) {
  std::vector<std::pair<VecQ, VecQ>> keys;
  for (const Wall& w : fam.walls) keys.emplace_back(w.normal, mukai_coords(s, w.u));
  std::sort(keys.begin(), keys.end());
  return keys;
}

/// Order-free signature of a singularity report for base-change comparisons.
std::multiset<std::string> report_signature(const DynkinReport& rep) {
  std::multiset<std::string> sig;
  for (const auto& c : rep.components) {
    VecZ marks = c.marks;
    std::sort(marks.begin(), marks.end());
    std::ostringstream os;
    os << c.label << "|" << c.affine_label << "|";
    for (const auto& m : marks) os << m << ",";
    sig.insert(os.str());
  }
  return sig;
}

std::string run_cli(const std::string& cmd, int& code) {
  FILE* pipe = ::popen(cmd.c_str(), "r");
  expect(pipe != nullptr, "cannot launch: " + cmd);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = ::pclose(pipe);
  expect(WIFEXITED(status), "abnormal CLI termination: " + cmd);
  code = WEXITSTATUS(status);
  return out;
}

// ---- criteria -----------------------------------------------------------------------

std::string c1_euler_vs_mukai() {
  auto t0 = std::chrono::steady_clock::now();
  oracle::Rng rng(101);
  std::vector<SurfaceData> surfaces;
  for (std::size_t rho : {1u, 2u, 3u, 4u, 4u})
    surfaces.push_back(oracle::random_k3_surface(rng, rho));
  for (const SurfaceData& s : surfaces) {
    expect(k3_type(s), "generated surface is not K3-type");
    for (int t = 0; t < 1000; ++t) {
      GammaClass gx{Rat(rng.pick(-6, 6)), VecQ(s.rank), Rat(rng.pick(-9, 9))};
      GammaClass gy{Rat(rng.pick(-6, 6)), VecQ(s.rank), Rat(rng.pick(-9, 9))};
      for (auto& e : gx.c1) e = Rat(rng.pick(-5, 5));
      for (auto& e : gy.c1) e = Rat(rng.pick(-5, 5));
      Rat chi = euler_form(s, ch_from_gamma(s, gx), ch_from_gamma(s, gy));
      Rat pairing = mukai_pairing(s, mukai_vector(s, gx), mukai_vector(s, gy));
      expect(chi == -pairing, "euler_form != -mukai_pairing at trial " + std::to_string(t));
    }
  }
  double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  expect(sec < 1.0, "took " + std::to_string(sec) + "s, budget 1s");
  return "5 surfaces x 1000 pairs";
}

std::string c2_asymmetry_defect() {
  SurfaceData p2 = plane_like();
  CohClass o{1, {Rat(0)}, 0};
  CohClass o1{1, {Rat(1)}, Rat(1, 2)};
  expect(euler_form(p2, o, o1) == 3 && euler_form(p2, o1, o) == 0,
         "projective-plane anchor values are wrong");
  oracle::Rng rng(103);
  SurfaceData s;
  for (int t = 0; t < 1000; ++t) {
    if (t % 50 == 0) s = oracle::random_general_surface(rng, 1 + t / 400);
    CohClass x = oracle::random_integral_class(rng, s, -6, 6);
    CohClass y = oracle::random_integral_class(rng, s, -6, 6);
    Rat defect = euler_form(s, x, y) - euler_form(s, y, x);
    VecQ dir = vec_sub(vec_scale(y.r, x.c1), vec_scale(x.r, y.c1));
    expect(defect == ns_pair(s, dir, s.canonical),
           "defect formula failed at trial " + std::to_string(t));
  }
  return "anchor + 1000 pairs, K != 0";
}

std::string c3_root_counts() {
  struct Case {
    const char* label;
    long bound;
    std::size_t count;
  };
  const Case cases[] = {{"A1", 1, 2},  {"A2", 1, 6},  {"A3", 1, 12}, {"A4", 1, 20},
                        {"D4", 2, 24}, {"E6", 3, 72}, {"E7", 4, 126}, {"E8", 6, 240}};
  double e8_sec = 0;
  for (const Case& c : cases) {
    auto t0 = std::chrono::steady_clock::now();
    MatQ g = ade_template_gram(c.label);
    RootSet rs = enumerate_roots(g);
    expect(rs.roots.size() == c.count,
           std::string(c.label) + ": got " + std::to_string(rs.roots.size()) + " roots");
    expect(rs.roots == oracle::box_roots(g, c.bound),
           std::string(c.label) + ": enumeration disagrees with the box oracle");
    if (std::string(c.label) == "E8")
      e8_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  expect(e8_sec < 10.0, "E8 took " + std::to_string(e8_sec) + "s, budget 10s");
  char note[64];
  std::snprintf(note, sizeof note, "8 types, E8 %.2fs", e8_sec);
  return note;
}

std::string c4_affine_classification() {
  for (const char* label : {"~A1", "~A2", "~A3", "~A4", "~D4", "~D5", "~E6", "~E7", "~E8"}) {
    MatQ g = affine_template_gram(label);
    AffineInfo ai = classify_affine(g);
    expect(ai.label == label, std::string(label) + " classified as " + ai.label);
    VecZ kernel = oracle::rref_kernel_vector(g);
    expect(!kernel.empty(), std::string(label) + ": oracle kernel is not one-dimensional");
    expect(ai.marks == kernel, std::string(label) + ": marks differ from the kernel vector");
  }
  return "9 extended types";
}

std::string c5_disjointness() {
  SurfaceData g = golden_a2();
  auto gu = [&](int i) {
    VecQ c(3, Rat(0));
    c[i] = 1;
    return CohClass{1, c, 1};
  };
  Decomposition ga{{1, gu(0)}, {1, gu(1)}, {1, gu(2)}};
  Decomposition gb{{1, gu(2)}, {1, gu(0)}, {1, gu(1)}};

  SurfaceData r5 = rho5_double();
  auto ru = [&](std::initializer_list<int> c1) {
    VecQ c;
    for (int x : c1) c.push_back(Rat(x));
    return CohClass{1, c, 1};
  };
  Decomposition ra{{1, ru({1, 0, 0, 0, 0})}, {1, ru({0, 1, 0, 0, 0})}, {1, ru({0, 0, 1, 0, 0})}};
  Decomposition rb{{1, ru({0, 0, 0, 1, 0})}, {1, ru({0, 0, 0, 0, 1})}, {1, ru({1, 1, 1, -1, -1})}};

  auto transport = [](const SurfaceData& s, const std::vector<CohClass>& gens,
                      const Decomposition& d) {
    Decomposition out = d;
    for (auto& [a, u] : out)
      for (const auto& r : gens) u = reflect(s, u, r);
    return out;
  };

  oracle::Rng rng(107);
  int pairs = 0;
  for (int t = 0; t < 25; ++t) {
    std::vector<CohClass> wg, wr;
    for (long l = rng.pick(1, 3); l > 0; --l) wg.push_back(random_minus_two(rng, g, 2));
    for (long l = rng.pick(1, 3); l > 0; --l) wr.push_back(random_minus_two(rng, r5, 1));
    Disjointness dg = disjointness_check(g, transport(g, wg, ga), transport(g, wg, gb));
    expect(dg == Disjointness::equal, "permuted decomposition stopped being equal");
    Disjointness dr = disjointness_check(r5, transport(r5, wr, ra), transport(r5, wr, rb));
    expect(dr == Disjointness::orthogonal, "orthogonal pair produced another outcome");
    pairs += 2;
  }
  return std::to_string(pairs) + " hypothesis-satisfying pairs";
}

std::string c6_weyl_algebra() {
  oracle::Rng rng(109);
  SurfaceData s;
  for (int t = 0; t < 1000; ++t) {
    if (t % 20 == 0) s = oracle::random_k3_surface(rng, 1 + t % 3);
    CohClass u = random_minus_two(rng, s, 4);
    CohClass x = oracle::random_integral_class(rng, s, -7, 7);
    CohClass y = oracle::random_integral_class(rng, s, -7, 7);
    expect(coh_eq(reflect(s, reflect(s, x, u), u), x), "reflection is not an involution");
    expect(mukai_pairing(s, reflect(s, x, u), reflect(s, y, u)) == mukai_pairing(s, x, y),
           "reflection does not preserve the pairing");
    CohClass w = coh_add(x, coh_scale(mukai_pairing(s, x, u) / 2, u));
    expect(mukai_pairing(s, w, u) == 0, "projection is not orthogonal to u");
    expect(coh_eq(reflect(s, w, u), w), "reflection moves a u-orthogonal class");
  }
  for (int t = 0; t < 100; ++t) {
    SurfaceData g = oracle::random_k3_surface(rng, 1 + t % 3);
    VecQ d1(g.rank), d2(g.rank);
    for (auto& e : d1) e = Rat(rng.pick(-5, 5));
    for (auto& e : d2) e = Rat(rng.pick(-5, 5));
    MatQ lhs = mat_mul(gen_matrix(g, make_trans(g, d1)), gen_matrix(g, make_trans(g, d2)));
    expect(lhs == gen_matrix(g, make_trans(g, vec_add(d1, d2))),
           "translation matrices do not compose additively");
  }
  for (int t = 0; t < 10; ++t) {
    SurfaceData g = oracle::random_k3_surface(rng, 2);
    g.gram[1][1] = -2;
    for (long b = -5; b <= 5; ++b)
      expect(twist_pair_identity(g, {Rat(0), Rat(1)}, Int(b)),
             "twist pair != translation at b = " + std::to_string(b));
  }
  return "1000 reflections, 100 translations, 10x11 twist pairs";
}

std::string c7_alcove_reduction() {
  auto t0 = std::chrono::steady_clock::now();
  oracle::Rng rng(113);
  std::vector<SurfaceData> surfaces{k3_with_block(ade_template_gram("A1")),
                                    k3_with_block(ade_template_gram("A2")),
                                    k3_with_block(ade_template_gram("D4"))};
  int done = 0;
  for (std::size_t i = 0; done < 500; i = (i + 1) % surfaces.size()) {
    const SurfaceData& s = surfaces[i];
    std::vector<AlcoveBlock> blocks{make_block(s, coordinate_simples(s))};
    VecQ alpha(s.rank);
    for (auto& x : alpha) x = rng.rat(-4, 4, 5);
    AlcoveReduction red;
    try {
      red = alcove_reduce(s, alpha, blocks);
    } catch (const MukaiError& e) {
      expect(e.kind() == ErrKind::on_wall, std::string("unexpected error: ") + e.what());
      continue;  // resample wall points
    }
    AlcoveMembership m = in_fund_alcove(s, red.alpha0, blocks);
    expect(m.inside && !m.on_wall, "reduction output is not strictly inside the alcove");
    AlcoveReduction again = alcove_reduce(s, red.alpha0, blocks);
    expect(again.word.gens.empty(), "reduced point reduces again");
    expect(again.alpha0 == red.alpha0, "re-reduction moved the point");
    ++done;
  }
  double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  expect(sec < 5.0, "took " + std::to_string(sec) + "s, budget 5s");
  return "500 off-wall reductions";
}

std::string c8_fm_isometries() {
  auto side = [](const SurfaceData& s, CohClass v0, VecQ h) {
    return make_fm_side(s, std::move(v0), std::move(h), true);
  };
  MatQ id2 = mat_identity(2);
  MatQ neg2 = {{Rat(-1), Rat(0)}, {Rat(0), Rat(-1)}};
  auto a1 = [&] { return side(hyperbolic_a1(), {2, {Rat(1), Rat(1)}, 2}, {Rat(1), Rat(1)}); };
  auto r2 = [&] { return side(k3_rank2(), {2, {Rat(1), Rat(1)}, 0}, {Rat(1), Rat(0)}); };
  auto ga = [&] {
    return side(golden_a2(), {3, {Rat(1), Rat(1), Rat(1)}, 3}, {Rat(1), Rat(1), Rat(1)});
  };
  auto mx = [&] {
    return side(mixed_rank3(), {2, {Rat(3), Rat(1), Rat(2)}, 2}, {Rat(4), Rat(-2), Rat(-3)});
  };
  auto r1 = [&] { return side(rank_one(), {2, {Rat(1)}, 1}, {Rat(1)}); };

  std::vector<FMIsometry> isos;
  isos.push_back(make_fm_iso(a1(), a1(), {{Rat(1)}}));
  isos.push_back(make_fm_iso(a1(), a1(), {{Rat(-1)}}));
  isos.push_back(make_fm_iso(a1(), a1(), {{Rat(1)}}, {Rat(1), Rat(-1)}));
  isos.push_back(make_fm_iso(r2(), r2(), {{Rat(1)}}));
  isos.push_back(make_fm_iso(r2(), r2(), {{Rat(-1)}}));
  isos.push_back(make_fm_iso(ga(), ga(), id2));
  isos.push_back(make_fm_iso(ga(), ga(), neg2));
  isos.push_back(make_fm_iso(mx(), mx(), id2));
  isos.push_back(make_fm_iso(mx(), mx(), neg2));
  isos.push_back(make_fm_iso(r1(), r1(), {}));
  expect(isos.size() >= 10, "fewer than 10 fixtures");

  oracle::Rng rng(127);
  int deg_checks = 0, inverses = 0;
  for (std::size_t k = 0; k < isos.size(); ++k) {
    const FMIsometry& iso = isos[k];
    const SurfaceData& src = iso.source.surface;
    const SurfaceData& tgt = iso.target.surface;
    std::string tag = "fixture " + std::to_string(k) + ": ";
    FMReport rep = fm_validate(iso);
    expect(rep.pass, tag + "validation failed at: " + rep.first_violation);
    expect(mat_mul(mat_mul(mat_transpose(iso.matrix), mukai_gram(tgt)), iso.matrix) ==
               mukai_gram(src),
           tag + "pairing not preserved on the lattice basis");
    auto apply_base = [&](const CohClass& v) {
      return coh_from_coords(tgt, mat_vec(iso.base_matrix, mukai_coords(src, v)));
    };
    expect(coh_eq(apply_base(iso.source.v0), point_class(tgt)), tag + "v0 image wrong");
    expect(coh_eq(apply_base(point_class(src)), iso.target.v0), tag + "point image wrong");
    expect(coh_eq(apply_base(delta_class(src, iso.source.v0, iso.source.H)),
                  coh_scale(Rat(-1), delta_class(tgt, iso.target.v0, iso.target.H))),
           tag + "delta(H) image wrong");
    for (int t = 0; t < 100; ++t) {
      CohClass v = oracle::random_integral_class(rng, src, -8, 8);
      expect(deg_twisted(src, iso.source.v0, v, iso.source.H) ==
                 -deg_twisted(tgt, iso.target.v0, apply_base(v), iso.target.H),
             tag + "degree not anti-preserved");
      ++deg_checks;
    }
    if (iso.post_translate.empty()) {
      FMIsometry inv = fm_inverse(iso);
      expect(mat_mul(inv.matrix, iso.matrix) == mat_identity(src.rank + 2),
             tag + "inverse does not invert");
      for (int t = 0; t < 10; ++t) {
        CohClass v = oracle::random_integral_class(rng, src, -6, 6);
        expect(coh_eq(fm_apply(inv, fm_apply(iso, v)), v), tag + "round trip moved a class");
      }
      ++inverses;
    }
  }
  return std::to_string(isos.size()) + " fixtures, " + std::to_string(deg_checks) +
         " degree checks, " + std::to_string(inverses) + " inverses";
}

std::string c9_walls() {
  oracle::Rng rng(131);
  // (a) point-class walls are root hyperplanes
  int zero_walls = 0;
  for (const SurfaceData& s : {k3_rank2(), golden_a2(), mixed_rank3()}) {
    VecQ c1(s.rank, Rat(0));
    c1[0] = 1;
    CohClass vg{2, c1, 1};
    std::vector<CohClass> roots;
    for (int t = 0; t < 30; ++t) roots.push_back(random_minus_two(rng, s, 3));
    WallFamily fam = walls_zero_dim(s, point_class(s), vg, roots);
    for (const Wall& w : fam.walls) {
      expect(w.offset == 0, "point-class wall has an offset");
      expect(w.normal == oracle::canonical_normal(mat_vec(s.gram, w.u.c1)),
             "point-class wall is not c1(u)-perp");
      ++zero_walls;
    }
    expect(!fam.walls.empty(), "zero-dimensional fixture produced no walls");
  }

  // (b) two-dimensional walls match the naive box oracle
  struct Fixture {
    SurfaceData s;
    CohClass v0;
    VecQ h;
    long bound;
  };
  std::vector<Fixture> fixtures{
      {golden_a2(), {3, {Rat(1), Rat(1), Rat(1)}, 3}, {Rat(1), Rat(1), Rat(1)}, 4},
      {mixed_rank3(), {2, {Rat(3), Rat(1), Rat(2)}, 2}, {Rat(4), Rat(-2), Rat(-3)}, 8},
      {hyperbolic_a1(), {2, {Rat(1), Rat(1)}, 2}, {Rat(1), Rat(1)}, 6},
      {k3_rank2(), {2, {Rat(1), Rat(1)}, 0}, {Rat(1), Rat(0)}, 4}};
  int families = 0;
  for (const Fixture& f : fixtures) {
    WallFamily fam = walls_two_dim(f.s, f.v0, f.h);
    expect(wall_keys(f.s, fam) == oracle::box_two_dim_walls(f.s, f.v0, f.h, f.bound),
           "two-dimensional walls disagree with the box oracle");
    ++families;
  }

  // (c) empty cases
  expect(walls_two_dim(rank_one(), {2, {Rat(1)}, 1}, {Rat(1)}).walls.empty(),
         "rank-one Picard lattice produced walls");
  expect(walls_two_dim(k3_rank2(), {1, {Rat(0), Rat(1)}, -1}, {Rat(1), Rat(0)}).walls.empty(),
         "rank-one v0 produced walls");

  // (d) generic samples avoid every wall
  int samples = 0;
  for (const Fixture& f : fixtures) {
    WallFamily fam = walls_two_dim(f.s, f.v0, f.h);
    MatZ basis = ns_perp_basis(f.s, f.h);
    if (basis.empty()) continue;
    VecQ lo(basis.size(), Rat(-3)), hi(basis.size(), Rat(3));
    for (long seed = 0; seed < 10; ++seed) {
      VecQ alpha = sample_generic(fam.walls, lo, hi, Int(seed), basis);
      expect(is_general(alpha, fam.walls), "sampled parameter lies on a wall");
      ++samples;
    }
  }
  return std::to_string(zero_walls) + " root hyperplanes, " + std::to_string(families) +
         " oracle matches, " + std::to_string(samples) + " samples";
}

std::string c10_singularity_pipeline() {
  struct Fixture {
    SurfaceData s;
    CohClass v0;
    VecQ h;
    std::multiset<std::string> expected;
  };
  auto sig1 = [](const char* one) { return std::multiset<std::string>{one}; };
  std::vector<Fixture> fixtures{
      {golden_a2(), {3, {Rat(1), Rat(1), Rat(1)}, 3}, {Rat(1), Rat(1), Rat(1)},
       sig1("A2|~A2|1,1,1,")},
      {rho5_double(), {3, {Rat(1), Rat(1), Rat(1), Rat(0), Rat(0)}, 3},
       {Rat(1), Rat(1), Rat(1), Rat(0), Rat(0)},
       {"A2|~A2|1,1,1,", "A2|~A2|1,1,1,"}},
      {hyperbolic_a1(), {2, {Rat(1), Rat(1)}, 2}, {Rat(1), Rat(1)}, sig1("A1|~A1|1,1,")},
      {mixed_rank3(), {2, {Rat(3), Rat(1), Rat(2)}, 2}, {Rat(4), Rat(-2), Rat(-3)}, {}}};

  oracle::Rng rng(137);
  int pair_checks = 0, invariance_checks = 0;
  for (std::size_t k = 0; k < fixtures.size(); ++k) {
    Fixture& f = fixtures[k];
    std::string tag = "fixture " + std::to_string(k) + ": ";

    PerpData pd = build_perp_data(f.s, f.v0, f.h);
    CohClass dh = delta_class(f.s, f.v0, f.h);
    std::vector<CohClass> roots = window_roots(f.s, pd);
    std::set<VecQ> keys;
    for (const CohClass& u : roots) keys.insert(mukai_coords(f.s, u));
    for (const CohClass& u : roots) {
      CohClass v = coh_add(f.v0, coh_scale(Rat(-1), u));
      expect(mukai_pairing(f.s, v, v) == -2, tag + "v0 - u is not a (-2)-class");
      expect(coh_integral(v), tag + "v0 - u is not integral");
      expect(mukai_pairing(f.s, v, f.v0) == 0 && mukai_pairing(f.s, v, dh) == 0,
             tag + "v0 - u left the orthogonal lattice");
      expect(keys.count(mukai_coords(f.s, v)) == 1, tag + "v0 - u is not a window root");
      ++pair_checks;
    }

    DynkinReport base = singularity_report(f.s, f.v0, f.h);
    if (k < fixtures.size() - 1 || !f.expected.empty())
      expect(report_signature(base) == f.expected, tag + "unexpected base report");
    for (int t = 0; t < 20; ++t) {
      oracle::BaseChange bc = oracle::random_unimodular(rng, f.s.rank);
      SurfaceData moved = oracle::change_basis(f.s, bc);
      CohClass v0m{f.v0.r, oracle::change_coords(f.v0.c1, bc), f.v0.s};
      DynkinReport rep = singularity_report(moved, v0m, oracle::change_coords(f.h, bc));
      expect(report_signature(rep) == report_signature(base),
             tag + "report changed under a basis change");
      ++invariance_checks;
    }
  }

  DynkinReport smooth = singularity_report(rank_one(), {2, {Rat(1)}, 1}, {Rat(1)});
  expect(smooth.components.empty(), "rank-one Picard fixture is not smooth");
  return std::to_string(pair_checks) + " root pairs, " + std::to_string(invariance_checks) +
         " basis changes, smooth case";
}

std::string c11_dimension_formula() {
  oracle::Rng rng(139);
  int checks = 0;
  for (const SurfaceData& s :
       {k3_rank2(), golden_a2(), mixed_rank3(), rank_one(), plane_like()}) {
    expect(expected_dim(s, point_class(s)) == 2, "expected_dim(point class) != 2");
    ++checks;
  }
  for (int t = 0; t < 100; ++t) {
    SurfaceData s = oracle::random_k3_surface(rng, 1 + t % 3);
    CohClass u = random_minus_two(rng, s, 5);
    expect(mukai_pairing(s, u, u) == -2, "generator did not produce a (-2)-class");
    expect(expected_dim(s, u) == 0, "expected_dim of a (-2)-class != 0");
    ++checks;
  }
  CohClass spherical{0, {Rat(0), Rat(1)}, 5};
  expect(expected_dim(k3_rank2(), spherical) == 0, "rank-zero (-2)-class has dimension != 0");
  return std::to_string(checks + 1) + " exact evaluations";
}

std::string c12_cli_determinism(const std::string& cli) {
  expect(!cli.empty(), "CLI path missing: pass it as argv[1]");
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "mukaikit_acceptance_fixtures";
  fs::create_directories(dir);
  auto put = [&](const char* name, const json& j) {
    fs::path p = dir / name;
    std::ofstream out(p);
    out << dump_json(j);
    expect(out.good(), std::string("cannot write ") + p.string());
    return p.string();
  };

  std::string golden = put("golden.json", surface_to_json(golden_a2()));
  std::string rank2 = put("rank2.json", surface_to_json(k3_rank2()));
  std::string plane = put("plane.json", surface_to_json(plane_like()));
  std::string a1 = put("a1.json", surface_to_json(hyperbolic_a1()));
  std::string blocky = put("block_a2.json", surface_to_json(k3_with_block(ade_template_gram("A2"))));

  json iso;
  json iso_side;
  iso_side["surface"] = surface_to_json(hyperbolic_a1());
  iso_side["v0"] = coh_to_json(CohClass{2, {Rat(1), Rat(1)}, 2});
  iso_side["H"] = json::parse("[1,1]");
  iso["source"] = iso_side;
  json iso_tgt = iso_side;
  iso_tgt["w0"] = iso_tgt["v0"];
  iso_tgt.erase("v0");
  iso["target"] = iso_tgt;
  iso["theta"] = json::parse("[[1]]");
  std::string selfiso = put("selfiso.json", iso);

  json jobs = json::array();
  auto add = [&](const char* cmd, std::initializer_list<std::string> args) {
    json e;
    e["command"] = cmd;
    json a = json::array();
    for (const auto& x : args) a.push_back(x);
    e["args"] = a;
    jobs.push_back(e);
  };
  add("validate", {"--surface", golden});
  add("pair", {"--surface", golden, R"({"r":3,"c1":[1,1,1],"s":3})", R"({"r":1,"c1":[1,0,0],"s":1})"});
  add("euler", {"--surface", plane, R"({"r":1,"c1":[0],"s":0})", R"({"r":1,"c1":[1],"s":"1/2"})"});
  add("roots", {"--surface", golden, "--perp", R"({"r":3,"c1":[1,1,1],"s":3})", "[1,1,1]"});
  add("singularities",
      {"--surface", golden, "--v0", R"({"r":3,"c1":[1,1,1],"s":3})", "--H", "[1,1,1]"});
  add("classify", {"--surface", a1, "--v0", R"({"r":2,"c1":[1,1],"s":2})", "--H", "[1,1]"});
  add("tilting-check", {"--surface", rank2, "--r", "3", "--xi", "[0,1]", "--H", "[1,0]"});
  add("tilting-check", {"--surface", rank2, "--r", "2", "--xi", "[0,1]", "--H", "[1,0]"});
  add("walls", {"--mode", "two", "--surface", golden, "--v0", R"({"r":3,"c1":[1,1,1],"s":3})",
                "--H", "[1,1,1]", "--sample-lo=-3", "--sample-hi=3", "--seed", "7"});
  add("walls", {"--mode", "zero", "--surface", rank2, "--v", R"({"r":0,"c1":[0,0],"s":1})",
                "--vG", R"({"r":2,"c1":[1,0],"s":1})",
                "--roots", R"([{"r":0,"c1":[0,1],"s":1},{"r":1,"c1":[1,1],"s":0}])"});
  add("path", {"--walls",
               R"([{"normal":[1,0],"offset":0,"u":{"r":0,"c1":[0,0],"s":0}},)"
               R"({"normal":[0,1],"offset":"-1/2","u":{"r":0,"c1":[0,0],"s":0}}])",
               "--from", "[1,1]", "--to", R"([-1,"-1/4"])"});
  add("reflect", {"--surface", rank2, "--u", R"({"r":1,"c1":[0,0],"s":1})",
                  R"({"r":0,"c1":[0,1],"s":0})"});
  add("translate", {"--surface", rank2, "--d", "[1,-2]", R"({"r":1,"c1":[0,0],"s":0})"});
  add("alcove", {"--surface", blocky, "--alpha", R"([1,1,"1/5"])",
                 "--simples", "[[[0,1,0],[0,0,1]]]"});
  add("fm-validate", {"--iso", selfiso});
  add("fm-apply", {"--iso", selfiso, "--v", R"({"r":2,"c1":[2,1],"s":3})"});
  json manifest;
  manifest["jobs"] = jobs;
  std::string mpath = put("manifest.json", manifest);

  std::vector<std::string> outputs;
  for (int jobcount : {1, 1, 1, 8, 8}) {
    int code = -1;
    std::string out = run_cli("\"" + cli + "\" batch --manifest \"" + mpath + "\" --jobs " +
                                  std::to_string(jobcount),
                              code);
    expect(code == 0, "batch exited with code " + std::to_string(code));
    expect(!out.empty(), "batch produced no output");
    outputs.push_back(std::move(out));
  }
  for (std::size_t i = 1; i < outputs.size(); ++i)
    expect(outputs[i] == outputs[0],
           "run " + std::to_string(i) + " differs from the first run");

  std::error_code ec;
  fs::remove_all(dir, ec);
  return std::to_string(jobs.size()) + " jobs, 3x --jobs 1 == 2x --jobs 8";
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  criterion(1, "Euler form equals minus the Mukai pairing on K3-type lattices",
            c1_euler_vs_mukai);
  criterion(2, "Euler-form asymmetry defect against the canonical class", c2_asymmetry_defect);
  criterion(3, "root counts of the ADE series vs the box oracle", c3_root_counts);
  criterion(4, "affine classification labels and kernel marks", c4_affine_classification);
  criterion(5, "isotropic decompositions are equal or orthogonal", c5_disjointness);
  criterion(6, "reflection, translation, and twist-pair identities", c6_weyl_algebra);
  criterion(7, "alcove reduction terminates strictly inside", c7_alcove_reduction);
  criterion(8, "cohomological isometries validate and invert", c8_fm_isometries);
  criterion(9, "wall families, empty cases, and generic samples", c9_walls);
  criterion(10, "singularity reports: root pairs and basis invariance",
            c10_singularity_pipeline);
  criterion(11, "expected moduli dimensions", c11_dimension_formula);
  criterion(12, "CLI batch output is byte-identical across runs and thread counts",
            [&] { return c12_cli_determinism(cli); });
  if (failures == 0)
    std::printf("all 12 criteria passed\n");
  else
    std::printf("%d criteria failed\n", failures);
  return failures;
}
