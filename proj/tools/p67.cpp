#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "p67/bridge.hpp"
#include "p67/config_io.hpp"
#include "p67/cremona.hpp"
#include "p67/dm.hpp"
#include "p67/errors.hpp"
#include "p67/suites.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw p67::ParseError("cannot read \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const ordered_json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out || !(out << text)) throw p67::ParseError("cannot write \"" + out_path + "\"");
}

p67::PlaneConfig load_plane(const std::string& path, p67::FieldDescriptor* field_out) {
  p67::ConfigFile c = p67::parse_config(read_file(path));
  if (!c.plane_config)
    throw p67::ParseError("\"" + path + "\" has no plane_config block");
  if (field_out) *field_out = c.field;
  return p67::PlaneConfig(*c.plane_config);
}

const char* stratum_name(p67::StratumClass::Kind k) {
  switch (k) {
    case p67::StratumClass::Kind::GenericSmooth: return "GenericSmooth";
    case p67::StratumClass::Kind::OnConic: return "OnConic";
    case p67::StratumClass::Kind::CollinearThrough6: return "CollinearThrough6";
    case p67::StratumClass::Kind::Excluded: return "Excluded";
  }
  return "Excluded";
}

ordered_json point1_json(const p67::Point1& p) {
  return ordered_json::array({p[0].to_text(), p[1].to_text()});
}

ordered_json point2_json(const p67::Point2& p) {
  return ordered_json::array({p[0].to_text(), p[1].to_text(), p[2].to_text()});
}

ordered_json p1_config_json(const p67::P1Config& c) {
  ordered_json pts = ordered_json::array();
  for (const p67::Point1& p : c.points()) pts.push_back(point1_json(p));
  ordered_json wts = ordered_json::array();
  for (int w : c.weights().weights()) wts.push_back(w);
  ordered_json j;
  j["field"] = c.field().to_string();
  j["points"] = pts;
  j["weights"] = wts;
  return j;
}

ordered_json plane_points_json(const p67::LabeledSix& pts) {
  ordered_json out = ordered_json::array();
  for (const p67::Point2& p : pts) out.push_back(point2_json(p));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification of the six-point plane / seven-point line bridge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", p67::kToolVersion);

  int exit_code = 0;

  std::string in_path, out_path;

  auto* classify_cmd =
      app.add_subcommand("classify", "stratum of a six-point plane configuration");
  classify_cmd->add_option("-i,--input", in_path, "configuration JSON file")->required();
  classify_cmd->add_option("--out", out_path, "write JSON here instead of stdout");
  classify_cmd->callback([&] {
    p67::PlaneConfig cfg = load_plane(in_path, nullptr);
    p67::StratumClass c = p67::classify(cfg);
    ordered_json j;
    j["stratum"] = stratum_name(c.kind);
    if (c.kind == p67::StratumClass::Kind::CollinearThrough6)
      j["pair"] = ordered_json::array({c.pair[0], c.pair[1]});
    if (c.kind == p67::StratumClass::Kind::Excluded) j["reason"] = c.reason;
    emit(j, out_path);
  });

  auto* phi_cmd = app.add_subcommand(
      "phi", "seven weighted points on the line attached to a six-point configuration");
  phi_cmd->add_option("-i,--input", in_path, "configuration JSON file")->required();
  phi_cmd->add_option("--out", out_path, "write JSON here instead of stdout");
  phi_cmd->callback([&] {
    p67::PlaneConfig cfg = load_plane(in_path, nullptr);
    p67::StratumClass c = p67::classify(cfg);
    ordered_json j;
    j["stratum"] = stratum_name(c.kind);
    switch (c.kind) {
      case p67::StratumClass::Kind::GenericSmooth:
      case p67::StratumClass::Kind::CollinearThrough6: {
        ordered_json body = p1_config_json(p67::phi67(cfg).as_p1_config());
        j.update(body);
        break;
      }
      case p67::StratumClass::Kind::OnConic: {
        ordered_json body = p1_config_json(p67::phi67_on_conic(cfg));
        j.update(body);
        break;
      }
      case p67::StratumClass::Kind::Excluded:
        throw p67::NotInDomain("excluded configuration: " + c.reason);
    }
    emit(j, out_path);
  });

  auto* fiber_cmd =
      app.add_subcommand("fiber", "the sixteen-point swap orbit through a generic configuration");
  fiber_cmd->add_option("-i,--input", in_path, "configuration JSON file")->required();
  fiber_cmd->add_option("--out", out_path, "write JSON here instead of stdout");
  fiber_cmd->callback([&] {
    p67::PlaneConfig cfg = load_plane(in_path, nullptr);
    if (p67::classify(cfg).kind != p67::StratumClass::Kind::GenericSmooth)
      throw p67::NotInDomain("fiber orbits need a GenericSmooth configuration");
    std::vector<p67::PlaneConfig> orbit = p67::fiber_orbit(cfg);
    ordered_json members = ordered_json::array();
    for (const p67::PlaneConfig& m : orbit) members.push_back(plane_points_json(m.points()));
    ordered_json j;
    j["field"] = cfg.field().to_string();
    j["size"] = members.size();
    j["members"] = members;
    emit(j, out_path);
  });

  std::string set_text;
  auto* swap_cmd = app.add_subcommand(
      "swap", "shortest generator word realizing a swap set on moduli");
  swap_cmd->add_option("--set", set_text, "swap set, e.g. \"1,3\" (empty for the identity)")
      ->required();
  swap_cmd->add_option("-i,--input", in_path, "also apply the geometric swap to this file");
  swap_cmd->add_option("--out", out_path, "write JSON here instead of stdout");
  swap_cmd->callback([&] {
    p67::SwapSet s = p67::SwapSet::parse(set_text);
    p67::CremonaWord w = p67::swap_word(s);
    ordered_json j;
    j["set"] = s.to_string();
    j["word"] = w.to_string();
    j["length"] = w.tokens().size();
    if (!in_path.empty()) {
      p67::PlaneConfig cfg = load_plane(in_path, nullptr);
      j["swapped"] = plane_points_json(p67::geometric_swap(cfg, s).points());
    }
    emit(j, out_path);
  });

  std::string mu_text;
  int points = 7;
  auto* desc_cmd =
      app.add_subcommand("descendants", "weight vectors reachable by stable collisions");
  desc_cmd->add_option("--mu", mu_text, "weight vector, e.g. \"1^12\"")->required();
  desc_cmd->add_option("--points", points, "number of stable classes after collapsing")
      ->required();
  desc_cmd->add_option("--out", out_path, "write JSON here instead of stdout");
  desc_cmd->callback([&] {
    p67::WeightVector mu = p67::WeightVector::parse(mu_text);
    std::vector<p67::WeightVector> d = p67::descendants(mu, points);
    ordered_json list = ordered_json::array();
    for (const p67::WeightVector& w : d) list.push_back(w.to_string());
    ordered_json j;
    j["mu"] = mu.to_string();
    j["points"] = points;
    j["count"] = d.size();
    j["descendants"] = list;
    emit(j, out_path);
  });

  auto* boundary_cmd =
      app.add_subcommand("boundary", "the 36 boundary divisors and their label orbits");
  boundary_cmd->add_option("--out", out_path, "write JSON here instead of stdout");
  boundary_cmd->callback([&] {
    const p67::BoundaryCensus& c = p67::boundary_divisors();
    ordered_json divisors = ordered_json::array();
    for (std::size_t i = 0; i < c.divisors.size(); ++i) {
      ordered_json d;
      d["label"] = c.divisors[i].to_string();
      d["orbit"] = c.orbit_of[i];
      divisors.push_back(d);
    }
    ordered_json j;
    j["count"] = c.divisors.size();
    j["orbit_sizes"] = c.orbit_sizes();
    j["divisors"] = divisors;
    emit(j, out_path);
  });

  std::string suite = "all", field_text = "prime:2147483647";
  int trials = 200;
  std::uint64_t seed = 42;
  auto* verify_cmd = app.add_subcommand("verify", "run a property suite and report");
  verify_cmd->add_option("--suite", suite, "suite name or \"all\"")->required();
  verify_cmd->add_option("--trials", trials, "independent trials (default 200)")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", seed, "plan seed (default 42)");
  verify_cmd->add_option("--field", field_text,
                         "rational | prime:<p> (default prime:2147483647)");
  verify_cmd->add_option("--out", out_path, "write the report here instead of stdout");
  verify_cmd->callback([&] {
    p67::TrialPlan plan;
    plan.suite = suite;
    plan.trials = trials;
    plan.seed = seed;
    plan.field = p67::parse_field_spec(field_text);
    p67::Report r = p67::run_suite(plan);
    emit(p67::report_json(r), out_path);
    if (r.failed > 0) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const p67::Error& e) {
    ordered_json j;
    j["error"] = ordered_json{{"kind", e.kind()}, {"what", e.what()}};
    std::cout << j.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    ordered_json j;
    j["error"] = ordered_json{{"kind", "Internal"}, {"what", e.what()}};
    std::cout << j.dump(2) << "\n";
    return 2;
  }
  return exit_code;
}
