// cbq: command-line front end for the conic bundle library.
//
// Every command fills a JSON report; text output is rendered from the same
// report so the two formats cannot drift apart.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cbq/brauer.hpp"
#include "cbq/bundles.hpp"
#include "cbq/families.hpp"
#include "cbq/plane.hpp"
#include "cbq/quadforms.hpp"

using json = nlohmann::ordered_json;
using namespace cbq;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kDegenerate = 2, kInconclusive = 3 };

struct RunConfig {
  std::uint64_t seed = 0;
  std::uint64_t prime_bound = 10000;
  std::uint64_t height_bound = 10000;
  std::string output = "text";
};

// Raised inside commands; carries the exit code.
struct Failure {
  int code;
  std::string message;
};

std::string q(const Rat& r) { return to_string(r); }

json weights_json(const Weights& w) { return json::array({w.a0, w.a1, w.a2}); }
json md_json(const Multidegree& d) { return json(std::vector<int>(d.begin(), d.end())); }

ConicBundle load_valid(const std::string& file, json& out) {
  ConicBundle cb;
  try {
    cb = load_bundle(file);
    auto v = validate_bundle(cb);
    out["weights"] = weights_json(v.bundle.weights);
    out["multidegree"] = md_json(v.bundle.multidegree());
    if (!v.notes.empty()) out["notes"] = v.notes;
    return v.bundle;
  } catch (const BundleError& e) {
    throw Failure{kInvalid, e.what()};
  } catch (const std::invalid_argument& e) {
    throw Failure{kInvalid, e.what()};
  }
}

void require_type(const ConicBundle& cb, const Weights& w) {
  if (!(cb.weights == w)) throw Failure{kInvalid, "expected type " + w.str() + ", got " + cb.weights.str()};
}

// ---------------------------------------------------------------- commands

json cmd_validate(const std::string& file) {
  json out;
  auto cb = load_valid(file, out);
  out["twist"] = cb.twist;
  out["discriminant_degree"] = cb.discriminant_degree();
  out["rational_by_section"] = cb.rational_by_section;
  for (int k = 0; k < 6; ++k) out["sigma"][sigma_name(k)] = cb.sigma[k].str();
  return out;
}

json cmd_discriminant(const std::string& file) {
  json out;
  auto cb = load_valid(file, out);
  auto d = discriminant(cb);
  out["delta"] = d.delta_homogeneous.str();
  out["delta_affine"] = d.delta_affine.str();
  out["degree"] = d.degree;
  out["squarefree_full_degree"] = has_good_discriminant(cb);
  if (d.degenerate) throw Failure{kDegenerate, "discriminant vanishes identically"};
  return out;
}

json cmd_diagonalize(const std::string& file) {
  json out;
  auto cb = load_valid(file, out);
  try {
    auto bp = brauer_model(cb);
    out["permutation"] = bp.perm;
    json d = json::array();
    for (const auto& x : bp.diag.d) d.push_back(x.str());
    out["diagonal"] = d;
    out["raw_a"] = bp.raw_a.str();
    out["raw_b"] = bp.raw_b.str();
    out["a"] = bp.a.str();
    out["b"] = bp.b.str();
    out["congruence_verified"] = verify_brauer_congruence(bp);
  } catch (const DegeneratePivot& e) {
    throw Failure{kDegenerate, e.what()};
  }
  return out;
}

json residue_json(const ResidueClass& r) {
  return {{"place", r.place.str()},
          {"v_a", r.va},
          {"v_b", r.vb},
          {"value", r.value_str()},
          {"trivial", r.trivial}};
}

json cmd_residues(const std::string& file, const RunConfig& cfg, int& code) {
  json out;
  auto cb = load_valid(file, out);
  if (cb.rational_by_section) {
    out["certificate"] = nullptr;
    out["note"] = "rational-by-section: no certificate can exist";
    code = kInconclusive;
    return out;
  }
  try {
    auto s = no_section_certificate(cb, cfg.prime_bound);
    out["a"] = s.model.a.str();
    out["b"] = s.model.b.str();
    json rs = json::array();
    for (const auto& r : s.residues) rs.push_back(residue_json(r));
    out["residues"] = rs;
    if (s.certificate) {
      const auto& c = *s.certificate;
      out["certificate"] = {{"place", c.residue.place.str()},
                            {"residue", c.residue.value_str()},
                            {"prime", c.witness.prime.p},
                            {"exact", c.witness.exact},
                            {"line", c.line()}};
      if (c.witness.prime.root) out["certificate"]["root"] = *c.witness.prime.root;
    } else {
      out["certificate"] = nullptr;
      code = kInconclusive;
    }
  } catch (const DegeneratePivot& e) {
    throw Failure{kDegenerate, e.what()};
  }
  return out;
}

json cmd_enumerate(int n) {
  if (n < 0) throw Failure{kInvalid, "--d must be non-negative"};
  json out;
  out["d"] = n;
  json rows = json::array();
  for (const auto& e : multidegrees_for_discriminant(n))
    rows.push_back({{"weights", weights_json(e.weights)}, {"twist", e.twist}, {"multidegree", md_json(e.degrees)}});
  out["types"] = rows;
  out["alcuin_count"] = alcuin_count(n);
  out["alcuin_closed_form"] = alcuin_closed_form(n);
  return out;
}

json cmd_cohomology(const std::string& type) {
  Weights w;
  try {
    w = parse_weights(type);
  } catch (const std::exception& e) {
    throw Failure{kInvalid, e.what()};
  }
  auto t = deformation_table(w);
  return {{"weights", weights_json(w)}, {"h1_end", t.h1_end}, {"h0_normal", t.h0_normal}, {"h1_normal", t.h1_normal}};
}

json cmd_cremona_chain(const std::string& file, const RunConfig& cfg, int& code) {
  json out;
  ConicBundle cb;
  if (file.empty()) {
    Rng rng(cfg.seed);
    cb = u12_admissible_member(rng);
    out["seed"] = cfg.seed;
  } else {
    cb = load_valid(file, out);
    require_type(cb, {4, 0, 0});
  }
  json coeffs;
  for (const auto& [k, v] : coefficient_values(cb)) coeffs[k] = q(v);
  out["coefficients"] = coeffs;
  try {
    auto ch = chain_U12(cb);
    out["delta"] = q(ch.delta);
    out["degrees"] = ch.degrees;
    out["multiplicities"] = ch.multiplicities;
    out["tangent_cone_at_q"] = ch.tangent_cone_q.str();
    out["C1"] = ch.C1.str();
    out["C2"] = ch.C2.str();
    out["C3"] = ch.C3.str();
    out["conic"] = ch.conic.str();
    out["predicted_conic"] = u12_predicted_conic(cb).str();
    out["matches_prediction"] = ch.conic_matches_prediction;
    if (!ch.conic_matches_prediction || ch.degrees != std::array<int, 4>{8, 6, 4, 2}) code = kInconclusive;
  } catch (const BundleError& e) {
    throw Failure{kInvalid, e.what()};
  } catch (const Contracted& e) {
    throw Failure{kDegenerate, e.what()};
  } catch (const std::domain_error& e) {
    throw Failure{kDegenerate, e.what()};
  }
  return out;
}

json cmd_dominance(const std::string& name, const std::string& type, int seeds, bool scaling_only,
                   const RunConfig& cfg, int& code) {
  LocusSpec spec;
  try {
    spec = locus(name);
  } catch (const std::exception& e) {
    throw Failure{kInvalid, e.what()};
  }
  if (!type.empty()) {
    Weights w;
    try {
      w = parse_weights(type);
    } catch (const std::exception& e) {
      throw Failure{kInvalid, e.what()};
    }
    if (!(w == spec.type)) throw Failure{kInvalid, name + " lives in type " + spec.type.str()};
  }
  if (seeds < 1) throw Failure{kInvalid, "--seeds must be positive"};
  json out;
  out["locus"] = name;
  out["type"] = weights_json(spec.type);
  out["group"] = scaling_only ? "scaling" : "full";
  json reports = json::array();
  for (int i = 0; i < seeds; ++i) {
    std::uint64_t s = cfg.seed + static_cast<std::uint64_t>(i);
    Rng rng(s);
    auto cb = locus_member(spec, rng);
    auto r = jacobian_rank_at_identity(spec, cb, s,
                                       scaling_only ? GroupRestriction::ScalingOnly : GroupRestriction::Full);
    json j{{"locus", r.locus},   {"type", weights_json(r.type)}, {"seed", r.seed},
           {"chart", r.chart},   {"rank", r.rank},               {"expected", r.expected},
           {"normalizer", r.normalizer}};
    if (!r.normalizer_note.empty()) j["normalizer_note"] = r.normalizer_note;
    reports.push_back(j);
    if (r.rank != r.expected) code = kInconclusive;
  }
  out["reports"] = reports;
  return out;
}

json cmd_degenerate(const std::string& pair, int& code) {
  std::vector<std::string> pairs;
  if (pair == "all") {
    pairs = degeneration_pairs();
  } else {
    pairs = {pair};
  }
  json out = json::array();
  for (const auto& p : pairs) {
    DegenerationReport r;
    try {
      r = verify_degeneration(p);
    } catch (const std::exception& e) {
      throw Failure{kInvalid, e.what()};
    }
    json checks = json::array();
    for (const auto& c : r.checks) {
      json j{{"name", c.name}, {"ok", c.ok}};
      if (!c.detail.empty()) j["detail"] = c.detail;
      checks.push_back(j);
    }
    json sig;
    for (const auto& [k, v] : r.special_sigma) sig[k] = v.str();
    out.push_back({{"pair", r.pair},
                   {"ok", r.ok()},
                   {"special_multidegree", md_json(r.special_multidegree)},
                   {"expected_multidegree", md_json(r.expected_multidegree)},
                   {"checks", checks},
                   {"special_sigma", sig}});
    if (!r.ok()) code = kInconclusive;
  }
  return {{"degenerations", out}};
}

json cmd_conic_point(const std::string& coeffs, const RunConfig& cfg, int& code) {
  ConicQ c;
  try {
    c = ConicQ::parse(coeffs);
  } catch (const std::exception& e) {
    throw Failure{kInvalid, e.what()};
  }
  auto r = conic_has_point(c, cfg.height_bound);
  json out;
  out["conic"] = c.str();
  out["polynomial"] = c.poly().str();
  static const char* names[] = {"point", "obstructed", "undecided", "degenerate"};
  out["status"] = names[static_cast<int>(r.status)];
  if (r.point) {
    const auto& p = *r.point;
    out["point"] = json::array({to_string(p[0]), to_string(p[1]), to_string(p[2])});
  }
  if (!r.obstructed_at.empty()) {
    json places = json::array();
    for (const auto& p : r.obstructed_at) places.push_back(place_str(p));
    out["obstructed_at"] = places;
  }
  out["height_searched"] = r.height_searched;
  if (!r.note.empty()) out["note"] = r.note;
  if (r.status == ConicPoint::Status::Undecided) code = kInconclusive;
  if (r.status == ConicPoint::Status::Degenerate) code = kDegenerate;
  return out;
}

json cmd_mestre(const std::string& file) {
  json out;
  auto cb = load_valid(file, out);
  require_type(cb, {4, 0, 0});
  try {
    auto m = mestre_normal_form(cb);
    out["T"] = m.T.str("u");
    out["c"] = q(m.c);
    out["shift"] = q(m.shift);
    out["A"] = q(m.A);
    out["B"] = q(m.B);
    out["square_value"] = q(m.square_value);
    out["xi"] = m.xi ? json(q(*m.xi)) : json(nullptr);
    out["P"] = m.P.str();
  } catch (const std::invalid_argument& e) {
    throw Failure{kDegenerate, e.what()};
  }
  return out;
}

// ---------------------------------------------------------------- output

void render_text(std::ostream& os, const json& j, const std::string& indent = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    std::string key = j.is_array() ? "-" : it.key() + ":";
    if (v.is_object() || (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array()))) {
      os << indent << key << "\n";
      render_text(os, v, indent + "  ");
    } else if (v.is_string()) {
      os << indent << key << " " << v.get<std::string>() << "\n";
    } else {
      os << indent << key << " " << v.dump() << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on conic bundles over P^1"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--prime-bound", cfg.prime_bound, "Largest prime tried for witnesses")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--height-bound", cfg.height_bound, "Height bound for rational point search")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--output", cfg.output, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string file, type, locus_name, pair, coeffs;
  int d = 8, seeds = 5;
  bool scaling_only = false;

  auto* validate = app.add_subcommand("validate", "Check degrees and normalize a bundle file");
  auto* disc = app.add_subcommand("discriminant", "Discriminant form of a bundle");
  auto* diag = app.add_subcommand("diagonalize", "Diagonal model a x^2 + b y^2 = z^2 of the generic fiber");
  auto* res = app.add_subcommand("residues", "Residues of the Brauer class and a no-section certificate");
  auto* mestre = app.add_subcommand("mestre", "Mestre normal form of a (4,0,0) bundle");
  for (auto* s : {validate, disc, diag, res, mestre})
    s->add_option("file", file, "Bundle file")->required()->check(CLI::ExistingFile);

  auto* enumerate = app.add_subcommand("enumerate", "Splitting types and multidegrees for a discriminant degree");
  enumerate->add_option("--d", d, "Discriminant degree")->capture_default_str();
  auto* coh = app.add_subcommand("cohomology", "Deformation dimensions of a splitting type");
  coh->add_option("--type", type, "Weights a0,a1,a2")->required();
  auto* chain = app.add_subcommand("cremona-chain", "Cremona reduction of the U12 octic to a conic");
  chain->add_option("--file", file, "Bundle file instead of a seeded member")->check(CLI::ExistingFile);
  auto* dom = app.add_subcommand("dominance", "Rank of the group action differential on a locus");
  dom->add_option("--locus", locus_name, "Locus name")->required();
  dom->add_option("--type", type, "Weights (checked against the locus)");
  dom->add_option("--seeds", seeds, "Number of consecutive seeds")->capture_default_str();
  dom->add_flag("--scaling-only", scaling_only, "Restrict the group to scalings");
  auto* deg = app.add_subcommand("degenerate", "Verify a splitting-type degeneration symbolically");
  deg->add_option("--pair", pair, "211-220, 220-310, 310-400 or all")->required();
  auto* conic = app.add_subcommand("conic-point", "Rational point on a plane conic");
  conic->add_option("coeffs", coeffs, "w0^2,w0w1,w1^2,w0w2,w1w2,w2^2")->required();

  // global flags may follow the subcommand
  for (auto* s : app.get_subcommands({})) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  auto* sub = app.get_subcommands().front();
  const std::string cmd = sub->get_name();
  int code = kOk;
  json report;
  std::string error;
  try {
    if (cmd == "validate") report = cmd_validate(file);
    else if (cmd == "discriminant") report = cmd_discriminant(file);
    else if (cmd == "diagonalize") report = cmd_diagonalize(file);
    else if (cmd == "residues") report = cmd_residues(file, cfg, code);
    else if (cmd == "mestre") report = cmd_mestre(file);
    else if (cmd == "enumerate") report = cmd_enumerate(d);
    else if (cmd == "cohomology") report = cmd_cohomology(type);
    else if (cmd == "cremona-chain") report = cmd_cremona_chain(file, cfg, code);
    else if (cmd == "dominance") report = cmd_dominance(locus_name, type, seeds, scaling_only, cfg, code);
    else if (cmd == "degenerate") report = cmd_degenerate(pair, code);
    else if (cmd == "conic-point") report = cmd_conic_point(coeffs, cfg, code);
  } catch (const Failure& f) {
    code = f.code;
    error = f.message;
  } catch (const std::exception& e) {
    code = kDegenerate;
    error = e.what();
  }

  json out{{"command", cmd}, {"exit_code", code}};
  if (!error.empty()) out["error"] = error;
  if (!report.is_null()) out["result"] = report;
  if (cfg.output == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    if (!error.empty()) std::cerr << "cbq " << cmd << ": " << error << "\n";
    if (!report.is_null()) render_text(std::cout, report);
  }
  return code;
}
