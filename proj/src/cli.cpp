#include "sympstab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sympstab/serialize.hpp"

namespace sympstab::cli {

namespace {

struct Options {
  std::string surface = "blowup:0";
  std::string format = "json";
  std::string tier = "candidate";
  std::string u, v;
  std::string floor;
  std::string left, right;
  std::string weights;
  std::string emit_walls;
  std::optional<int> square;
  std::optional<int> square_min;
  std::optional<Integer> box;
  std::optional<int> level;
  std::optional<int> balls;
};

std::vector<std::string> split_list(std::string text) {
  for (char& ch : text) {
    if (ch == ';') ch = ',';
  }
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto first = item.find_first_not_of(" \t()");
    const auto last = item.find_last_not_of(" \t()");
    if (first == std::string::npos) throw ValidationError("empty entry in list '" + text + "'");
    parts.push_back(item.substr(first, last - first + 1));
  }
  return parts;
}

SymplecticClass parse_areas(const SurfaceModel& surface, const std::string& text, const std::string& label) {
  if (text.empty()) throw ValidationError("--" + label + " is required");
  const auto parts = split_list(text);
  if (static_cast<Eigen::Index>(parts.size()) != surface.rank()) {
    throw ValidationError("--" + label + " needs " + std::to_string(surface.rank()) + " areas for " +
                          surface.spec_string() + ", got " + std::to_string(parts.size()));
  }
  SymplecticClass a(surface.rank());
  for (std::size_t i = 0; i < parts.size(); ++i) a(static_cast<Eigen::Index>(i)) = parse_rational(parts[i]);
  return from_areas(surface, a);
}

std::optional<int> parse_floor(const std::string& text) {
  if (text.empty() || text == "inf" || text == "infinity") return std::nullopt;
  try {
    std::size_t used = 0;
    const int n = std::stoi(text, &used);
    if (used == text.size()) return n;
  } catch (const std::exception&) {
  }
  throw ValidationError("--floor must be a positive integer or 'inf', got '" + text + "'");
}

EnumerationBounds make_bounds(const SurfaceModel& surface, const Options& opt) {
  EnumerationBounds bounds;
  bounds.square_min = opt.square_min;
  if (opt.box) {
    if (*opt.box < 0) throw ValidationError("--box must be nonnegative");
    bounds.box = CoefficientBox::uniform(surface, *opt.box);
  }
  bounds.validate(surface);
  return bounds;
}

Certification parse_tier(const std::string& tier) {
  return tier == "cremona" ? Certification::CremonaCertified : Certification::Candidate;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string json_scalar(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_float()) {
    throw ValidationError("config value " + value.dump() + " is a float; write fractions as \"p/q\"");
  }
  return value.dump();
}

// Config keys are option names; values are spliced in after the subcommand unless given as flags.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  const auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return args;
  if (std::next(it) == args.end()) throw ValidationError("--config needs a file name");
  const Json config = read_json_file(*std::next(it));
  args.erase(it, std::next(it, 2));
  if (!config.is_object()) throw ValidationError("config file must hold a JSON object");

  std::vector<std::string> extra;
  for (const auto& [key, value] : config.items()) {
    const std::string flag = "--" + key;
    if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back(flag);
      continue;
    }
    extra.push_back(flag);
    if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) joined += (joined.empty() ? "" : ",") + json_scalar(item);
      extra.push_back(joined);
    } else {
      extra.push_back(json_scalar(value));
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

std::string range_text(const DegreeRange& range) {
  if (range.empty()) return "empty";
  return "[" + std::to_string(range.lo) + "," + std::to_string(range.hi) + "]";
}

std::string areas_text(const SurfaceModel& surface, const SymplecticClass& u) {
  const SymplecticClass a = areas(surface, u);
  std::string out = "(";
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (i > 0) out += (i == 1 && !surface.is_product()) ? "; " : ", ";
    out += format_rational(a(i));
  }
  return out + ")";
}

void print_classes(std::ostream& out, const SurfaceModel& surface, const std::vector<LatticeClass>& classes,
                   const std::string& indent = "  ") {
  for (const auto& a : classes) {
    out << indent << notation(surface, a) << "  (square " << square(surface, a) << ")\n";
  }
}

std::string verdict_text(const StabilityVerdict& verdict) {
  std::string out;
  switch (verdict.mode) {
    case StabilityMode::Full:
      out = "Full: pi_i agree for all i >= 0";
      break;
    case StabilityMode::Level:
      out = "Level(" + std::to_string(verdict.level) + "): pi_i agree for i in " + range_text(verdict.range);
      break;
    case StabilityMode::None:
      out = "None: no stability range";
      break;
  }
  return out + " [" + to_string(verdict.certification) + "]";
}

class Command {
 public:
  Command(const Options& opt, std::ostream& out) : opt_(opt), out_(out), surface_(parse_surface(opt.surface)) {
    if (opt.format != "json" && opt.format != "text") {
      throw ValidationError("--format must be json or text, got '" + opt.format + "'");
    }
    json_ = opt.format == "json";
  }

  void surface() {
    if (json_) {
      Json gram = Json::array();
      for (Eigen::Index r = 0; r < surface_.rank(); ++r) gram.push_back(to_json(LatticeClass(surface_.gram().row(r).transpose())));
      emit(Json{{"version", kSchemaVersion},
                {"surface", to_json(surface_)},
                {"rank", surface_.rank()},
                {"euler_characteristic", surface_.euler_characteristic()},
                {"gram", gram},
                {"canonical", to_json(surface_.canonical())},
                {"canonical_square", surface_.canonical_square()}});
      return;
    }
    out_ << surface_.spec_string() << ": rank " << surface_.rank() << ", chi " << surface_.euler_characteristic()
         << "\nK = " << notation(surface_, surface_.canonical()) << ", K.K = " << surface_.canonical_square() << "\n";
  }

  void enumerate() {
    if (!opt_.square) throw ValidationError("--square is required");
    if (*opt_.square >= 0) throw ValidationError("--square must be negative");
    const auto bounds = make_bounds(surface_, opt_);
    const auto classes = enumerate_candidates(surface_, *opt_.square, bounds);
    const bool want_cert = parse_tier(opt_.tier) == Certification::CremonaCertified;
    std::vector<LatticeClass> uncertified;
    if (want_cert) {
      for (const auto& a : classes) {
        if (!cremona_certified(surface_, a)) uncertified.push_back(a);
      }
    }
    const auto tier = want_cert && uncertified.empty() ? Certification::CremonaCertified : Certification::Candidate;
    if (json_) {
      Json j{{"version", kSchemaVersion},
             {"surface", to_json(surface_)},
             {"square", *opt_.square},
             {"count", classes.size()},
             {"classes", Json::array()},
             {"certification", to_string(tier)}};
      for (const auto& a : classes) j["classes"].push_back(to_json(a));
      if (!uncertified.empty()) {
        j["uncertified"] = Json::array();
        for (const auto& a : uncertified) j["uncertified"].push_back(to_json(a));
      }
      emit(j);
      return;
    }
    out_ << classes.size() << " classes of square " << *opt_.square << " on " << surface_.spec_string() << " ["
         << to_string(tier) << "]\n";
    print_classes(out_, surface_, classes);
  }

  void sets() {
    const auto u = parse_areas(surface_, opt_.u, "u");
    const auto bounds = make_bounds(surface_, opt_);
    const auto n = parse_floor(opt_.floor);
    if (!n) throw ValidationError("sets needs a finite --floor");
    const auto set = spherical_set(surface_, u, *n, bounds, parse_tier(opt_.tier));
    if (json_) {
      Json j = to_json(set);
      j["version"] = kSchemaVersion;
      j["u"] = areas_to_json(surface_, u);
      emit(j);
      return;
    }
    out_ << "S_u for u = " << areas_text(surface_, u) << ", squares >= -" << set.square_floor << ": " << set.size()
         << " classes [" << to_string(set.certification) << "]\n";
    print_classes(out_, surface_, set.classes);
  }

  void diff() {
    SetDifference result;
    if (!opt_.left.empty() || !opt_.right.empty()) {
      if (opt_.left.empty() || opt_.right.empty()) throw ValidationError("--left and --right go together");
      result = diff_from_files();
    } else {
      const auto u = parse_areas(surface_, opt_.u, "u");
      const auto v = parse_areas(surface_, opt_.v, "v");
      result = symmetric_difference(surface_, u, v, parse_floor(opt_.floor), make_bounds(surface_, opt_));
    }
    if (json_) {
      Json j = to_json(surface_, result);
      j["version"] = kSchemaVersion;
      emit(j);
      return;
    }
    out_ << "floor " << result.floor << (result.floor_certified ? " (complete)" : "") << "\n";
    out_ << "only in S_u: " << result.only_first.size() << "\n";
    print_classes(out_, surface_, result.only_first.classes);
    out_ << "only in S_v: " << result.only_second.size() << "\n";
    print_classes(out_, surface_, result.only_second.classes);
  }

  void strata() {
    if (!opt_.level) throw ValidationError("--level is required");
    const auto u = parse_areas(surface_, opt_.u, "u");
    const auto index = enumerate_admissible(surface_, u, *opt_.level, make_bounds(surface_, opt_));
    if (json_) {
      Json j = to_json(index);
      j["version"] = kSchemaVersion;
      j["u"] = areas_to_json(surface_, u);
      emit(j);
      return;
    }
    out_ << index.strata.size() << " labelled strata of codimension < " << index.level << " ["
         << to_string(index.certification) << "]\n";
    for (const auto& s : index.strata) {
      out_ << "  codim " << s.codim << ": {";
      for (std::size_t i = 0; i < s.classes.size(); ++i) out_ << (i ? ", " : "") << notation(surface_, s.classes[i]);
      out_ << "}\n";
    }
    out_ << "  residual: codim >= " << index.residual_codim << "\n";
  }

  void stability() {
    const auto u = parse_areas(surface_, opt_.u, "u");
    const auto v = parse_areas(surface_, opt_.v, "v");
    const auto verdict = max_stable_level(surface_, u, v, make_bounds(surface_, opt_));
    if (json_) {
      emit(Json{{"version", kSchemaVersion},
                {"surface", to_json(surface_)},
                {"u", areas_to_json(surface_, u)},
                {"v", areas_to_json(surface_, v)},
                {"verdict", to_json(verdict)}});
      return;
    }
    out_ << verdict_text(verdict) << "\n";
    for (const auto& line : verdict.justification) out_ << "  " << line << "\n";
  }

  void certify() {
    const auto u = parse_areas(surface_, opt_.u, "u");
    const auto v = parse_areas(surface_, opt_.v, "v");
    const auto cert = sympstab::certify(surface_, u, v, make_bounds(surface_, opt_));
    if (!opt_.emit_walls.empty()) write_walls(cert);
    if (json_) {
      emit(to_json(cert));
      return;
    }
    out_ << "segment " << areas_text(surface_, u) << " -> " << areas_text(surface_, v) << "\n";
    if (cert.perturbation) {
      out_ << "non-generic; perturbed start " << areas_text(surface_, cert.perturbation->perturbed) << " (epsilon "
           << format_rational(cert.perturbation->epsilon) << ")\n";
    }
    out_ << cert.walls.size() << " walls\n";
    for (const auto& w : cert.walls) {
      out_ << "  t = " << format_rational(w.t_star) << "  " << notation(surface_, w.wall_class) << "  "
           << to_string(w.direction) << "\n";
    }
    for (const auto& step : cert.chain) {
      out_ << "  sample " << step.from << " -> " << step.to << ": " << to_string(step.relation);
      if (step.step_level) out_ << ", level " << *step.step_level << ", range " << range_text(step.range);
      out_ << "\n";
    }
    out_ << verdict_text(cert.verdict) << "\n";
  }

  void capacities() {
    if (!opt_.balls) throw ValidationError("--balls is required");
    if (*opt_.balls < 1) throw ValidationError("--balls must be >= 1");
    const auto u = parse_areas(surface_, opt_.u, "u");
    BallConfig config{surface_, {}, true};
    if (opt_.weights.empty()) {
      config.capacities.assign(static_cast<std::size_t>(*opt_.balls), Rational(1));
    } else {
      for (const auto& w : split_list(opt_.weights)) config.capacities.push_back(parse_rational(w));
      if (config.capacities.size() != static_cast<std::size_t>(*opt_.balls)) {
        throw ValidationError("--weights needs one entry per ball");
      }
    }
    EnumerationBounds bounds = make_bounds(blowup_surface(surface_, config.capacities.size()), opt_);
    if (const auto n = parse_floor(opt_.floor)) {
      if (*n < 1) throw ValidationError("--floor must be >= 1");
      bounds.square_min = -*n;
    }
    const auto profile = critical_capacities(surface_, u, config, bounds);
    if (json_) {
      Json j = to_json(profile);
      j["version"] = kSchemaVersion;
      j["base"] = to_json(surface_);
      j["u"] = areas_to_json(surface_, u);
      emit(j);
      return;
    }
    const auto exact = profile.c_max.exact();
    out_ << "blow-up " << profile.blowup.spec_string() << ", c_max "
         << (exact ? format_rational(*exact) : "sqrt(" + format_rational(profile.c_max.squared) + ")") << " ["
         << to_string(profile.certification) << "]\n";
    out_ << profile.critical.size() << " critical capacities\n";
    for (const auto& c : profile.critical) {
      out_ << "  c = " << format_rational(c.capacity) << ":";
      for (const auto& a : c.wall_classes) out_ << " " << notation(profile.blowup, a);
      out_ << "\n";
    }
    for (const auto& note : profile.notes) out_ << "  note: " << note << "\n";
  }

 private:
  void emit(const Json& j) { out_ << j.dump(2) << "\n"; }

  SetDifference diff_from_files() {
    const auto left = sphere_set_from_json(read_json_file(opt_.left));
    const auto right = sphere_set_from_json(read_json_file(opt_.right));
    if (!(left.surface == right.surface)) throw ValidationError("--left and --right are on different surfaces");
    surface_ = left.surface;
    SetDifference result;
    result.floor = std::min(left.square_floor, right.square_floor);
    const auto within = [&](const LatticeClass& a) { return square(surface_, a) >= -result.floor; };
    result.only_first = SphereClassSet{surface_, {}, result.floor, Certification::Candidate, {}};
    result.only_second = result.only_first;
    for (const auto& a : left.classes) {
      if (within(a) && !right.contains(a)) result.only_first.classes.push_back(a);
    }
    for (const auto& a : right.classes) {
      if (within(a) && !left.contains(a)) result.only_second.classes.push_back(a);
    }
    return result;
  }

  void write_walls(const StabilityCertificate& cert) {
    std::ofstream file(opt_.emit_walls);
    if (!file) throw ValidationError("cannot write '" + opt_.emit_walls + "'");
    file << "t_star,class,square,direction\n";
    for (const auto& w : cert.walls) {
      file << format_rational(w.t_star) << "," << notation(surface_, w.wall_class) << ","
           << square(surface_, w.wall_class) << "," << to_string(w.direction) << "\n";
    }
  }

  const Options& opt_;
  std::ostream& out_;
  SurfaceModel surface_;
  bool json_ = true;
};

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--surface", opt.surface, "product or blowup:k")->capture_default_str();
  sub->add_option("--format", opt.format, "json or text")->envname("SYMPSTAB_FORMAT")->capture_default_str();
  sub->add_option("--tier", opt.tier, "candidate or cremona")->check(CLI::IsMember({"candidate", "cremona"}));
  sub->add_option("--square-min", opt.square_min, "lowest square to enumerate (negative)");
  sub->add_option("--box", opt.box, "bound on every coordinate of enumerated classes");
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Exact sphere-class sets, wall crossings and stability ranges for rational 4-manifolds", "sympstab"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");
  // Handled before parsing; declared here so it shows up in --help.
  std::string config_path;
  app.add_option("--config", config_path, "JSON file whose keys are option names; flags override it");

  auto* surface = app.add_subcommand("surface", "Intersection form and canonical class");
  add_common(surface, opt);

  auto* enumerate = app.add_subcommand("enumerate", "Candidate sphere classes of one square");
  add_common(enumerate, opt);
  enumerate->add_option("--square", opt.square, "negative square")->required();

  auto* sets = app.add_subcommand("sets", "Negative sphere classes of positive area");
  add_common(sets, opt);
  sets->add_option("--u", opt.u, "basis areas, e.g. 5/2,1 or 3;1,1");
  sets->add_option("--floor", opt.floor, "square floor n");

  auto* diff = app.add_subcommand("diff", "Symmetric difference of two sphere-class sets");
  add_common(diff, opt);
  diff->add_option("--u", opt.u, "areas of u");
  diff->add_option("--v", opt.v, "areas of v");
  diff->add_option("--floor", opt.floor, "square floor n, or inf");
  diff->add_option("--left", opt.left, "sets JSON file");
  diff->add_option("--right", opt.right, "sets JSON file");

  auto* strata = app.add_subcommand("strata", "Admissible labels of codimension below a level");
  add_common(strata, opt);
  strata->add_option("--u", opt.u, "areas of u");
  strata->add_option("--level", opt.level, "even level 2n");

  auto* stability = app.add_subcommand("stability", "Stability verdict between two classes");
  add_common(stability, opt);
  stability->add_option("--u", opt.u, "areas of u");
  stability->add_option("--v", opt.v, "areas of v");

  auto* certify = app.add_subcommand("certify", "Wall-crossing certificate along a segment");
  add_common(certify, opt);
  certify->add_option("--u", opt.u, "areas of u");
  certify->add_option("--v", opt.v, "areas of v");
  certify->add_option("--emit-walls", opt.emit_walls, "write wall data as CSV to this file");

  auto* capacities = app.add_subcommand("capacities", "Critical ball capacities along a ray");
  add_common(capacities, opt);
  capacities->add_option("--u", opt.u, "areas of u");
  capacities->add_option("--balls", opt.balls, "number of balls");
  capacities->add_option("--weights", opt.weights, "ray weights, default all 1");
  capacities->add_option("--floor", opt.floor, "square floor for wall candidates");

  try {
    std::vector<std::string> args = apply_config(raw_args);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n";
      return kExitValidation;
    }

    Command command(opt, out);
    if (*surface) command.surface();
    if (*enumerate) command.enumerate();
    if (*sets) command.sets();
    if (*diff) command.diff();
    if (*strata) command.strata();
    if (*stability) command.stability();
    if (*certify) command.certify();
    if (*capacities) command.capacities();
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitConsistency;
  }
}

}  // namespace sympstab::cli
