#include <algorithm>
#include <atomic>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <mukaikit/json_io.hpp>
#include <mukaikit/mukaikit.hpp>

namespace {

using namespace mukai;

constexpr int kOk = 0;     // success
constexpr int kUsage = 1;  // usage / parse / io error
constexpr int kMath = 2;   // precondition or math error
constexpr int kFalse = 3;  // predicate command evaluated to false

int code_for(const MukaiError& e) {
  return (e.kind() == ErrKind::parse || e.kind() == ErrKind::io) ? kUsage : kMath;
}

SurfaceData load_surface(const std::string& arg) {
  SurfaceData s = surface_from_json(arg_to_json(arg));
  validate_surface(s);
  return s;
}

CohClass load_coh(const std::string& arg) { return coh_from_json(arg_to_json(arg)); }

VecQ load_vec(const std::string& arg) { return vecq_from_json(arg_to_json(arg)); }

Int load_int(const std::string& text, const char* what) {
  Rat q = parse_rat(text);
  require(is_integer(q), ErrKind::parse, std::string(what) + " must be an integer");
  return rat_num(q);
}

int run_job(const std::vector<std::string>& args, std::string& out);

int run_batch(const std::string& manifest_arg, int jobs, std::string& out) {
  json manifest = arg_to_json(manifest_arg);
  const json& jlist = detail::field(manifest, "jobs", "manifest");
  require(jlist.is_array(), ErrKind::parse, "manifest \"jobs\" must be an array");
  std::vector<std::vector<std::string>> argvs;
  for (const auto& e : jlist) {
    const json& cmd = detail::field(e, "command", "job");
    require(cmd.is_string(), ErrKind::parse, "job \"command\" must be a string");
    std::vector<std::string> argv{cmd.get<std::string>()};
    if (e.contains("args")) {
      require(e["args"].is_array(), ErrKind::parse, "job \"args\" must be an array");
      for (const auto& a : e["args"]) {
        require(a.is_string(), ErrKind::parse, "job args must be strings");
        argv.push_back(a.get<std::string>());
      }
    }
    argvs.push_back(std::move(argv));
  }

  std::vector<int> codes(argvs.size(), 0);
  std::vector<std::string> outputs(argvs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < argvs.size(); i = next.fetch_add(1))
      codes[i] = run_job(argvs[i], outputs[i]);
  };
  std::size_t nthreads = std::max(1, jobs);
  nthreads = std::min(nthreads, std::max<std::size_t>(argvs.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t + 1 < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  bool failed = false;
  json results = json::array();
  for (std::size_t i = 0; i < argvs.size(); ++i) {
    json r;
    r["command"] = argvs[i][0];
    json a = json::array();
    for (std::size_t k = 1; k < argvs[i].size(); ++k) a.push_back(argvs[i][k]);
    r["args"] = a;
    r["exit"] = codes[i];
    json parsed = json::parse(outputs[i], nullptr, false);
    if (parsed.is_discarded())
      r["output"] = outputs[i];
    else
      r["output"] = parsed;
    results.push_back(std::move(r));
    if (codes[i] == kUsage || codes[i] == kMath) failed = true;
  }
  json top;
  top["results"] = results;
  out = dump_json(top);
  return failed ? kMath : kOk;
}

int run_job(const std::vector<std::string>& args, std::string& out) {
  CLI::App app{"exact lattice invariants of sheaf moduli on surfaces"};
  app.name("mukaikit");
  app.require_subcommand(1);
  std::function<int(std::string&)> action;

  // validate
  std::string va_surface;
  auto* va = app.add_subcommand("validate", "check a surface file and report its type flags");
  va->add_option("--surface", va_surface, "surface JSON (file or inline)")->required();
  va->callback([&] {
    action = [&](std::string& o) {
      SurfaceData s = load_surface(va_surface);
      json j;
      j["k3_type"] = k3_type(s);
      o = dump_json(j);
      return kOk;
    };
  });

  // pair / euler
  std::string pr_surface, pr_x, pr_y;
  auto* pr = app.add_subcommand("pair", "Mukai pairing of two classes");
  pr->add_option("--surface", pr_surface)->required();
  pr->add_option("x", pr_x, "first class JSON")->required();
  pr->add_option("y", pr_y, "second class JSON")->required();
  pr->callback([&] {
    action = [&](std::string& o) {
      SurfaceData s = load_surface(pr_surface);
      json j;
      j["value"] = rat_to_json(mukai_pairing(s, load_coh(pr_x), load_coh(pr_y)));
      o = dump_json(j);
      return kOk;
    };
  });

  std::string eu_surface, eu_x, eu_y;
  auto* eu = app.add_subcommand("euler", "Euler pairing of two classes");
  eu->add_option("--surface", eu_surface)->required();
  eu->add_option("x", eu_x, "first class JSON")->required();
  eu->add_option("y", eu_y, "second class JSON")->required();
  eu->callback([&] {
    action = [&](std::string& o) {
      SurfaceData s = load_surface(eu_surface);
      json j;
      j["value"] = rat_to_json(euler_form(s, load_coh(eu_x), load_coh(eu_y)));
      o = dump_json(j);
      return kOk;
    };
  });

  // roots
  std::string rt_surface, rt_norm = "-2";
  std::vector<std::string> rt_perp;
  auto* rt = app.add_subcommand("roots",
                                "enumerate roots of {v0, delta(H)}-perp modulo v0");
  rt->add_option("--surface", rt_surface)->required();
  // allow_extra_args(false) stops CLI11 from exploding bracketed JSON like [1,1,1]
  // into comma-separated fragments.
  rt->add_option("--perp", rt_perp, "v0 JSON and H JSON")
      ->expected(2)
      ->allow_extra_args(false)
      ->required();
  rt->add_option("--norm", rt_norm, "square to enumerate (default -2)");
  rt->callback([&] {
    action = [&](std::string& o) {
      SurfaceData s = load_surface(rt_surface);
      PerpData pd = build_perp_data(s, load_coh(rt_perp[0]), load_vec(rt_perp[1]));
      RootSet rs = enumerate_roots(pd.M.gram, parse_rat(rt_norm));
      o = dump_json(rootset_to_json(rs));
      return kOk;
    };
  });

  // classify / singularities
  std::string cl_surface, cl_v0, cl_h;
  auto bind_classify = [&](CLI::App* sub, std::string& surf, std::string& v0s, std::string& hs) {
    sub->add_option("--surface", surf)->required();
    sub->add_option("--v0", v0s, "Mukai vector JSON")->required();
    sub->add_option("--H", hs, "polarization JSON")->required();
    sub->callback([&action, &surf, &v0s, &hs] {
      action = [&surf, &v0s, &hs](std::string& o) {
        SurfaceData s = load_surface(surf);
        DynkinReport rep = singularity_report(s, load_coh(v0s), load_vec(hs));
        o = dump_json(report_to_json(rep));
        return kOk;
      };
    });
  };
  bind_classify(app.add_subcommand("classify", "root-system report of the orthogonal lattice"),
                cl_surface, cl_v0, cl_h);
  std::string sg_surface, sg_v0, sg_h;
  bind_classify(app.add_subcommand("singularities", "predicted rational double points"),
                sg_surface, sg_v0, sg_h);

  // tilting-check
  std::string tc_surface, tc_r, tc_xi, tc_h;
  auto* tc = app.add_subcommand("tilting-check",
                                "divisibility obstruction test on H-orthogonal roots");
  tc->add_option("--surface", tc_surface)->required();
  tc->add_option("--r", tc_r, "rank (positive integer)")->required();
  tc->add_option("--xi", tc_xi, "first Chern class JSON")->required();
  tc->add_option("--H", tc_h, "polarization JSON")->required();
  tc->callback([&] {
    action = [&](std::string& o) {
      SurfaceData s = load_surface(tc_surface);
      VecQ witness;
      bool ok = tilting_check(s, load_int(tc_r, "--r"), load_vec(tc_xi), load_vec(tc_h),
                              &witness);
      json j;
      j["pass"] = ok;
      if (!ok) j["witness"] = vecq_to_json(witness);
      o = dump_json(j);
      return ok ? kOk : kFalse;
    };
  });

  // walls
  std::string wl_mode, wl_surface, wl_v0, wl_h, wl_v, wl_vg, wl_roots;
  std::string wl_lo, wl_hi, wl_seed = "0";
  auto* wl = app.add_subcommand("walls", "wall-and-chamber hyperplanes");
  wl->add_option("--mode", wl_mode, "zero or two")
      ->required()
      ->check(CLI::IsMember({"zero", "two"}));
  wl->add_option("--surface", wl_surface)->required();
  wl->add_option("--v0", wl_v0, "Mukai vector JSON (mode two)");
  wl->add_option("--H", wl_h, "polarization JSON (mode two)");
  wl->add_option("--v", wl_v, "moduli vector JSON (mode zero)");
  wl->add_option("--vG", wl_vg, "reference vector JSON (mode zero)");
  wl->add_option("--roots", wl_roots, "JSON array of wall classes u (mode zero)");
  wl->add_option("--sample-lo", wl_lo, "lower box bound for a generic sample");
  wl->add_option("--sample-hi", wl_hi, "upper box bound for a generic sample");
  wl->add_option("--seed", wl_seed, "sample seed (default 0)");
  wl->callback([&] {
    action = [&](std::string& o) {
      SurfaceData s = load_surface(wl_surface);
      WallFamily fam;
      MatZ basis;
      std::size_t dim = s.rank;
      if (wl_mode == "two") {
        require(!wl_v0.empty() && !wl_h.empty(), ErrKind::parse,
                "mode two needs --v0 and --H");
        VecQ h = load_vec(wl_h);
        fam = walls_two_dim(s, load_coh(wl_v0), h);
        basis = ns_perp_basis(s, h);
        dim = basis.size();
      } else {
        require(!wl_v.empty() && !wl_vg.empty() && !wl_roots.empty(), ErrKind::parse,
                "mode zero needs --v, --vG and --roots");
        json rj = arg_to_json(wl_roots);
        require(rj.is_array(), ErrKind::parse, "--roots must be a JSON array");
        std::vector<CohClass> us;
        for (const auto& e : rj) us.push_back(coh_from_json(e));
        fam = walls_zero_dim(s, load_coh(wl_v), load_coh(wl_vg), us);
      }
      json j = wall_family_to_json(fam);
      if (!wl_lo.empty() || !wl_hi.empty()) {
        require(!wl_lo.empty() && !wl_hi.empty(), ErrKind::parse,
                "--sample-lo and --sample-hi go together");
        require(dim > 0, ErrKind::validation, "nothing to sample: the box is 0-dimensional");
        VecQ lo(dim, parse_rat(wl_lo)), hi(dim, parse_rat(wl_hi));
        VecQ alpha = sample_generic(fam.walls, lo, hi, load_int(wl_seed, "--seed"), basis);
        j["sample"] = vecq_to_json(alpha);
      }
      o = dump_json(j);
      return kOk;
    };
  });

  // path
  std::string pa_walls, pa_from, pa_to;
  auto* pa = app.add_subcommand("path", "ordered wall crossings of a segment");
  pa->add_option("--walls", pa_walls, "wall list JSON (from the walls command)")->required();
  pa->add_option("--from", pa_from, "start point JSON")->required();
  pa->add_option("--to", pa_to, "end point JSON")->required();
  pa->callback([&] {
    action = [&](std::string& o) {
      std::vector<Wall> walls = walls_from_json(arg_to_json(pa_walls));
      ChamberPath p = crossing_path(load_vec(pa_from), load_vec(pa_to), walls);
      o = dump_json(path_to_json(p));
      return kOk;
    };
  });

  // reflect / translate
  std::string rf_surface, rf_u, rf_v;
  auto* rf = app.add_subcommand("reflect", "reflection in a (-2)-class, as a one-letter word");
  rf->add_option("--surface", rf_surface)->required();
  rf->add_option("--u", rf_u, "(-2)-class JSON")->required();
  rf->add_option("v", rf_v, "optional class to map");
  rf->callback([&] {
    action = [&](std::string& o) {
      SurfaceData s = load_surface(rf_surface);
      WeylWord w = make_word(s, {make_refl(s, load_coh(rf_u))});
      json j;
      j["word"] = word_to_json(w);
      if (!rf_v.empty()) j["value"] = coh_to_json(apply_word(s, w, load_coh(rf_v)));
      o = dump_json(j);
      return kOk;
    };
  });

  std::string tr_surface, tr_d, tr_v;
  auto* tr = app.add_subcommand("translate", "line-bundle twist, as a one-letter word");
  tr->add_option("--surface", tr_surface)->required();
  tr->add_option("--d", tr_d, "NS class JSON")->required();
  tr->add_option("v", tr_v, "optional class to map");
  tr->callback([&] {
    action = [&](std::string& o) {
      SurfaceData s = load_surface(tr_surface);
      WeylWord w = make_word(s, {make_trans(s, load_vec(tr_d))});
      json j;
      j["word"] = word_to_json(w);
      if (!tr_v.empty()) j["value"] = coh_to_json(apply_word(s, w, load_coh(tr_v)));
      o = dump_json(j);
      return kOk;
    };
  });

  // alcove
  std::string al_surface, al_alpha, al_simples;
  auto* al = app.add_subcommand("alcove", "reduce a twist parameter into the fundamental alcove");
  al->add_option("--surface", al_surface)->required();
  al->add_option("--alpha", al_alpha, "NS class JSON")->required();
  al->add_option("--simples", al_simples, "JSON array of blocks, each an array of NS classes")
      ->required();
  al->callback([&] {
    action = [&](std::string& o) {
      SurfaceData s = load_surface(al_surface);
      json bj = arg_to_json(al_simples);
      require(bj.is_array(), ErrKind::parse, "--simples must be a JSON array of arrays");
      std::vector<AlcoveBlock> blocks;
      for (const auto& b : bj) {
        require(b.is_array(), ErrKind::parse, "each block must be an array of NS classes");
        std::vector<VecQ> simples;
        for (const auto& c : b) simples.push_back(vecq_from_json(c));
        blocks.push_back(make_block(s, std::move(simples)));
      }
      AlcoveReduction red = alcove_reduce(s, load_vec(al_alpha), blocks);
      json j;
      j["word"] = word_to_json(red.word);
      j["alpha0"] = vecq_to_json(red.alpha0);
      o = dump_json(j);
      return kOk;
    };
  });

  // fm-apply / fm-validate
  std::string fa_iso, fa_v;
  auto* fa = app.add_subcommand("fm-apply", "apply a validated cohomological isometry");
  fa->add_option("--iso", fa_iso, "isometry JSON")->required();
  fa->add_option("--v", fa_v, "class JSON")->required();
  fa->callback([&] {
    action = [&](std::string& o) {
      FMIsometry iso = fmiso_from_json(arg_to_json(fa_iso));
      FMReport rep = fm_validate(iso);
      require(rep.pass, ErrKind::validation, "isometry fails validation: " + rep.first_violation);
      CohClass v = load_coh(fa_v);
      json j;
      j["value"] = coh_to_json(fm_apply(iso, v));
      FMDecomposition dec = fm_decompose(iso, v);
      json d;
      d["l"] = rat_to_json(dec.l);
      d["a"] = rat_to_json(dec.a);
      d["d"] = rat_to_json(dec.d);
      d["D"] = vecq_to_json(dec.D);
      j["decomposition"] = d;
      o = dump_json(j);
      return kOk;
    };
  });

  std::string fv_iso;
  auto* fv = app.add_subcommand("fm-validate", "check the isometry axioms; exit 3 on failure");
  fv->add_option("--iso", fv_iso, "isometry JSON")->required();
  fv->callback([&] {
    action = [&](std::string& o) {
      FMIsometry iso = fmiso_from_json(arg_to_json(fv_iso));
      FMReport rep = fm_validate(iso);
      json j;
      j["pass"] = rep.pass;
      j["first_violation"] = rep.first_violation;
      j["integral"] = rep.integral;
      o = dump_json(j);
      return rep.pass ? kOk : kFalse;
    };
  });

  // batch
  std::string ba_manifest;
  int ba_jobs = 1;
  auto* ba = app.add_subcommand("batch", "run a manifest of jobs; order-preserving output");
  ba->add_option("--manifest", ba_manifest, "manifest JSON {\"jobs\": [...]}")->required();
  ba->add_option("--jobs", ba_jobs, "max concurrent jobs (default 1)");
  ba->callback([&] {
    action = [&](std::string& o) { return run_batch(ba_manifest, ba_jobs, o); };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (!action) fail(ErrKind::parse, "no subcommand given");
    return action(out);
  } catch (const CLI::CallForHelp&) {
    out = app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out = app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    json j;
    json inner;
    inner["kind"] = "parse";
    inner["detail"] = std::string(e.what());
    j["error"] = inner;
    out = dump_json(j);
    return kUsage;
  } catch (const MukaiError& e) {
    out = dump_json(error_to_json(e));
    return code_for(e);
  } catch (const std::exception& e) {
    json j;
    json inner;
    inner["kind"] = "internal";
    inner["detail"] = std::string(e.what());
    j["error"] = inner;
    out = dump_json(j);
    return kMath;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string out;
  int code = run_job(args, out);
  std::cout << out;
  return code;
}
