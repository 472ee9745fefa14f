// Command-line front end over the propermap C API.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "propermap/propermap.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kFail = 1, kInadmissible = 2, kStale = 3 };

struct Failure {
  int code;
  std::string message;
};

struct Options {
  std::string domain;
  int nodes = 0;
  std::vector<std::string> marked;
  std::string base = "auto";
  std::vector<int> grid;
  std::string out = ".";
  std::uint64_t seed = 1;
  std::vector<std::string> thresholds;
  std::vector<std::string> maps;
  std::vector<double> coeffs;
  std::string point;
  double c3 = 1.0;
  bool ppm = false;
  std::vector<std::string> at;
};

int exit_for(pm_status s) {
  switch (s) {
    case PM_OK:
      return kOk;
    case PM_ERR_INADMISSIBLE_BASE:
      return kInadmissible;
    case PM_ERR_STALE:
      return kStale;
    default:
      return kFail;
  }
}

void check(pm_status s, const std::string& context) {
  if (s != PM_OK) throw Failure{exit_for(s), context + ": " + pm_last_error()};
}

struct Domain {
  pm_domain* ptr = nullptr;
  ~Domain() { pm_domain_free(ptr); }
};

struct Map {
  pm_map* ptr = nullptr;
  Map() = default;
  explicit Map(pm_map* p) : ptr(p) {}
  Map(Map&& o) noexcept : ptr(o.ptr) { o.ptr = nullptr; }
  Map(const Map&) = delete;
  ~Map() { pm_map_free(ptr); }
};

struct Owned {
  char* s = nullptr;
  ~Owned() { pm_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kFail, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kFail, "cannot write " + path.string()};
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

fs::path out_dir(const Options& o) {
  fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{kFail, "cannot create " + dir.string()};
  return dir;
}

bool valid_nodes(int n) { return n >= 64 && n <= 8192 && (n & (n - 1)) == 0; }

void load_domain(const Options& o, Domain& d) {
  if (o.domain.empty()) throw Failure{kFail, "--domain is required"};
  if (o.nodes != 0 && !valid_nodes(o.nodes)) throw Failure{kFail, "--nodes must be a power of two in [64, 8192]"};
  check(pm_domain_load_file(o.domain.c_str(), o.nodes, &d.ptr), "domain");
  if (!valid_nodes(pm_domain_nodes(d.ptr))) throw Failure{kFail, "node count must be a power of two in [64, 8192]"};
}

pm_boundary_point parse_point(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(s);
    std::size_t used = 0;
    const int curve = std::stoi(s.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument(s);
    const std::string ts = s.substr(colon + 1);
    const double t = std::stod(ts, &used);
    if (used != ts.size()) throw std::invalid_argument(s);
    return {curve, t};
  } catch (const std::exception&) {
    throw Failure{kFail, "expected curve:t, got \"" + s + "\""};
  }
}

std::pair<double, double> parse_xy(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(s);
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw Failure{kFail, "expected x,y, got \"" + s + "\""};
  }
}

pm_base parse_base(const std::string& s) {
  pm_base b{};
  if (s == "auto") {
    b.kind = PM_BASE_AUTO;
  } else if (s.rfind("boundary:", 0) == 0) {
    b.kind = PM_BASE_BOUNDARY;
    b.boundary = parse_point(s.substr(9));
  } else {
    b.kind = PM_BASE_INTERIOR;
    std::tie(b.x, b.y) = parse_xy(s);
  }
  return b;
}

pm_thresholds thresholds(const Options& o) {
  pm_thresholds th;
  pm_thresholds_default(&th);
  for (const auto& t : o.thresholds) check(pm_thresholds_set(&th, t.c_str()), "threshold");
  return th;
}

/// Marked points sorted into curve order, one per curve.
std::vector<pm_boundary_point> marked_points(const Options& o, int curves) {
  std::vector<pm_boundary_point> b;
  for (const auto& s : o.marked) b.push_back(parse_point(s));
  std::stable_sort(b.begin(), b.end(), [](const auto& x, const auto& y) { return x.curve < y.curve; });
  for (int k = 1; k <= curves; ++k) {
    const auto n = std::count_if(b.begin(), b.end(), [&](const auto& p) { return p.curve == k; });
    if (n == 0) throw Failure{kFail, "curve " + std::to_string(k) + " has no marked point"};
    if (n > 1) throw Failure{kFail, "curve " + std::to_string(k) + " has more than one marked point"};
  }
  for (const auto& p : b)
    if (p.curve < 1 || p.curve > curves) throw Failure{kFail, "curve index " + std::to_string(p.curve) + " out of range"};
  return b;
}

Map load_map(const Domain& d, const std::string& path) {
  Map m;
  check(pm_map_from_json(d.ptr, read_file(path).c_str(), &m.ptr), path);
  return m;
}

std::string map_json(const Map& m) {
  Owned s;
  check(pm_map_to_json(m.ptr, &s.s), "serialize");
  return s.str();
}

int certify_and_write(const Map& m, const Options& o, const fs::path& dir, const std::string& name) {
  const pm_thresholds th = thresholds(o);
  int passed = 0;
  Owned report;
  check(pm_map_certify(m.ptr, &th, &passed, &report.s), "certify");
  write_file(dir / name, report.str());
  const json r = json::parse(report.str());
  std::cout << "degree " << r["degree"] << " (poles " << r["expected_degree"] << "), boundary residual "
            << r["boundary_real"].get<double>() << "\n";
  for (const auto& f : r["failures"]) std::cout << "FAIL " << f.get<std::string>() << "\n";
  return passed ? kOk : kFail;
}

struct Grid {
  int width = 0, height = 0;
  std::vector<double> xy;
};

Grid make_grid(const Domain& d, const Options& o) {
  Grid g;
  if (o.grid.size() != 2 || o.grid[0] < 1 || o.grid[1] < 1) throw Failure{kFail, "--grid needs W H >= 1"};
  g.width = o.grid[0];
  g.height = o.grid[1];
  double bb[4];
  check(pm_domain_bbox(d.ptr, bb), "bbox");
  for (int r = 0; r < g.height; ++r)
    for (int c = 0; c < g.width; ++c) {
      g.xy.push_back(bb[0] + (c + 0.5) * (bb[1] - bb[0]) / g.width);
      g.xy.push_back(bb[3] - (r + 0.5) * (bb[3] - bb[2]) / g.height);
    }
  return g;
}

std::string csv(const std::vector<pm_sample>& samples) {
  std::string out = "x,y,re,im,disc_abs,near_pole\n";
  char line[256];
  for (const auto& s : samples) {
    if (!s.inside) continue;
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", s.x, s.y, s.re, s.im,
                  std::hypot(s.disc_re, s.disc_im), s.near_pole);
    out += line;
  }
  return out;
}

/// Phase portrait: hue from arg w, full saturation, value from |w|.
void write_ppm(const fs::path& path, int width, int height, const std::vector<std::pair<double, double>>& disc,
               const std::vector<bool>& inside) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kFail, "cannot write " + path.string()};
  out << "P6\n" << width << " " << height << "\n255\n";
  for (std::size_t i = 0; i < disc.size(); ++i) {
    unsigned char rgb[3] = {40, 40, 40};
    if (inside[i]) {
      const double h = (std::atan2(disc[i].second, disc[i].first) + std::numbers::pi) / (2 * std::numbers::pi) * 6.0;
      const double v = std::clamp(0.25 + 0.75 * std::hypot(disc[i].first, disc[i].second), 0.0, 1.0);
      const int sector = static_cast<int>(std::floor(h)) % 6;
      const double f = h - std::floor(h);
      const double p = 0.0, q = v * (1 - f), t = v * f;
      double r = v, g = t, b = p;
      switch (sector) {
        case 1: r = q; g = v; b = p; break;
        case 2: r = p; g = v; b = t; break;
        case 3: r = p; g = q; b = v; break;
        case 4: r = t; g = p; b = v; break;
        case 5: r = v; g = p; b = q; break;
        default: break;
      }
      rgb[0] = static_cast<unsigned char>(std::lround(255 * r));
      rgb[1] = static_cast<unsigned char>(std::lround(255 * g));
      rgb[2] = static_cast<unsigned char>(std::lround(255 * b));
    }
    out.write(reinterpret_cast<const char*>(rgb), 3);
  }
}

void write_grid_outputs(const Map& m, const Domain& d, const Options& o, const fs::path& dir) {
  if (o.grid.empty()) return;
  const Grid g = make_grid(d, o);
  std::vector<pm_sample> samples(g.xy.size() / 2);
  check(pm_map_eval_many(m.ptr, g.xy.data(), samples.size(), samples.data()), "grid evaluation");
  write_file(dir / "grid.csv", csv(samples));
  if (o.ppm) {
    std::vector<std::pair<double, double>> disc;
    std::vector<bool> inside;
    for (const auto& s : samples) {
      disc.emplace_back(s.disc_re, s.disc_im);
      inside.push_back(s.inside != 0);
    }
    write_ppm(dir / "portrait.ppm", g.width, g.height, disc, inside);
  }
}

// ---- commands ----

int cmd_domain_validate(const Options& o) {
  Domain d;
  load_domain(o, d);
  Owned s;
  check(pm_domain_summary_json(d.ptr, &s.s), "summary");
  std::cout << s.str() << "\n";
  return kOk;
}

int cmd_ahlfors(const Options& o) {
  Domain d;
  load_domain(o, d);
  double ax = 0, ay = 0;
  if (o.base == "auto") {
    check(pm_domain_reference_point(d.ptr, &ax, &ay), "reference point");
  } else {
    std::tie(ax, ay) = parse_xy(o.base);
  }
  pm_ahlfors* raw = nullptr;
  check(pm_ahlfors_build(d.ptr, ax, ay, &raw), "ahlfors");
  std::unique_ptr<pm_ahlfors, void (*)(pm_ahlfors*)> f(raw, pm_ahlfors_free);
  Owned info;
  check(pm_ahlfors_info_json(f.get(), &info.s), "ahlfors");
  const fs::path dir = out_dir(o);
  write_file(dir / "ahlfors.json", info.str());
  std::cout << info.str() << "\n";
  if (!o.grid.empty()) {
    const Grid g = make_grid(d, o);
    std::string text = "x,y,re,im,abs\n";
    std::vector<std::pair<double, double>> disc;
    std::vector<bool> inside;
    char line[256];
    for (std::size_t i = 0; i < g.xy.size() / 2; ++i) {
      const double x = g.xy[2 * i], y = g.xy[2 * i + 1];
      double re = 0, im = 0;
      int in = 0;
      const bool ok = pm_domain_contains(d.ptr, x, y, &in) == PM_OK && in && pm_ahlfors_eval(f.get(), x, y, &re, &im) == PM_OK;
      disc.emplace_back(re, im);
      inside.push_back(ok);
      if (!ok) continue;
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n", x, y, re, im, std::hypot(re, im));
      text += line;
    }
    write_file(dir / "ahlfors_grid.csv", text);
    if (o.ppm) write_ppm(dir / "ahlfors.ppm", g.width, g.height, disc, inside);
  }
  return kOk;
}

Map build_with_retries(const Domain& d, const std::vector<pm_boundary_point>& b, const Options& o) {
  pm_base base = parse_base(o.base);
  if (base.kind == PM_BASE_AUTO) {
    base.kind = PM_BASE_INTERIOR;
    check(pm_domain_reference_point(d.ptr, &base.x, &base.y), "reference point");
  }
  Map m;
  pm_status s = pm_grunsky_build(d.ptr, b.data(), b.size(), &base, &m.ptr);
  if (s != PM_ERR_INADMISSIBLE_BASE || base.kind != PM_BASE_INTERIOR) {
    check(s, "grunsky");
    return m;
  }
  double bb[4];
  check(pm_domain_bbox(d.ptr, bb), "bbox");
  const double scale = 0.02 * std::max(bb[1] - bb[0], bb[3] - bb[2]);
  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> jitter(0.0, scale);
  std::string last = pm_last_error();
  for (int attempt = 1; attempt <= 5; ++attempt) {
    pm_base moved = base;
    moved.x += jitter(rng);
    moved.y += jitter(rng);
    int inside = 0;
    if (pm_domain_contains(d.ptr, moved.x, moved.y, &inside) != PM_OK || !inside) continue;
    std::cerr << "base point inadmissible (" << last << "); retrying at " << moved.x << "," << moved.y << "\n";
    s = pm_grunsky_build(d.ptr, b.data(), b.size(), &moved, &m.ptr);
    if (s == PM_OK) return m;
    if (s != PM_ERR_INADMISSIBLE_BASE) check(s, "grunsky");
    last = pm_last_error();
  }
  throw Failure{kInadmissible, "base point inadmissible after 5 jittered retries: " + last};
}

int cmd_grunsky_build(const Options& o) {
  Domain d;
  load_domain(o, d);
  const auto b = marked_points(o, pm_domain_curve_count(d.ptr));
  Map m = build_with_retries(d, b, o);
  std::vector<double> a(b.size());
  std::size_t n = 0;
  check(pm_map_coefficients(m.ptr, a.data(), a.size(), &n), "coefficients");
  for (std::size_t j = 0; j < n; ++j) std::printf("a_%zu = %.17g\n", j + 1, a[j]);
  const fs::path dir = out_dir(o);
  write_file(dir / "map.json", map_json(m));
  write_grid_outputs(m, d, o, dir);
  return certify_and_write(m, o, dir, "report.json");
}

int cmd_grunsky_eval(const Options& o) {
  Domain d;
  load_domain(o, d);
  if (o.maps.size() != 1) throw Failure{kFail, "grunsky eval needs one --map"};
  Map m = load_map(d, o.maps.front());
  std::vector<double> xy;
  for (const auto& s : o.at) {
    const auto [x, y] = parse_xy(s);
    xy.push_back(x);
    xy.push_back(y);
  }
  if (!xy.empty()) {
    std::vector<pm_sample> samples(xy.size() / 2);
    check(pm_map_eval_many(m.ptr, xy.data(), samples.size(), samples.data()), "evaluate");
    std::cout << csv(samples);
    return kOk;
  }
  if (o.grid.empty()) throw Failure{kFail, "grunsky eval needs --grid or --at"};
  write_grid_outputs(m, d, o, out_dir(o));
  return kOk;
}

int cmd_grunsky_certify(const Options& o) {
  Domain d;
  load_domain(o, d);
  if (o.maps.size() != 1) throw Failure{kFail, "grunsky certify needs one --map"};
  Map m = load_map(d, o.maps.front());
  return certify_and_write(m, o, out_dir(o), "report.json");
}

int finish_proper(const Map& m, const Domain& d, const Options& o) {
  const fs::path dir = out_dir(o);
  write_file(dir / "map.json", map_json(m));
  write_grid_outputs(m, d, o, dir);
  return certify_and_write(m, o, dir, "report.json");
}

int degree_of(const Map& m) {
  int deg = -1;
  check(pm_map_degree(m.ptr, &deg), "degree");
  return deg;
}

int cmd_semigroup_combine(const Options& o) {
  Domain d;
  load_domain(o, d);
  if (o.maps.empty()) throw Failure{kFail, "combine needs at least one --map"};
  std::vector<double> c = o.coeffs;
  if (c.empty()) c.assign(o.maps.size(), 1.0);
  if (c.size() != o.maps.size()) throw Failure{kFail, "give one --c per --map"};
  std::vector<Map> maps;
  std::vector<const pm_map*> ptrs;
  for (const auto& p : o.maps) {
    maps.push_back(load_map(d, p));
    ptrs.push_back(maps.back().ptr);
  }
  Map out;
  Owned report;
  const pm_status s = pm_semigroup_combine(ptrs.data(), c.data(), ptrs.size(), &out.ptr, &report.s);
  const fs::path dir = out_dir(o);
  if (report.s) write_file(dir / "combine.json", report.str());
  if (s == PM_ERR_INVALID_COMBINATION) {
    std::cout << report.str() << "\n";
    throw Failure{kFail, pm_last_error()};
  }
  check(s, "combine");
  return finish_proper(out, d, o);
}

int cmd_semigroup_add(const Options& o) {
  Domain d;
  load_domain(o, d);
  if (o.maps.size() != 1) throw Failure{kFail, "add-point needs one --map"};
  Map m = load_map(d, o.maps.front());
  Map out;
  check(pm_semigroup_add_point(m.ptr, parse_point(o.point), o.c3, &out.ptr), "add-point");
  std::cout << "degree " << degree_of(m) << " -> " << degree_of(out) << "\n";
  return finish_proper(out, d, o);
}

int cmd_semigroup_remove(const Options& o) {
  Domain d;
  load_domain(o, d);
  if (o.maps.size() != 1) throw Failure{kFail, "remove-point needs one --map"};
  Map m = load_map(d, o.maps.front());
  Map out;
  double c0 = 0, c = 0;
  check(pm_semigroup_remove_point(m.ptr, parse_point(o.point), &out.ptr, &c0, &c), "remove-point");
  std::cout << "c0 = " << c0 << ", c = " << c << "\n";
  std::cout << "degree " << degree_of(m) << " -> " << degree_of(out) << "\n";
  return finish_proper(out, d, o);
}

int cmd_verify(const Options& o) {
  Domain d;
  load_domain(o, d);
  if (o.maps.size() != 1) throw Failure{kFail, "verify needs one --map"};
  const pm_thresholds th = thresholds(o);
  int passed = 0;
  Owned report;
  check(pm_verify_json(d.ptr, read_file(o.maps.front()).c_str(), &th, &passed, &report.s), "verify");
  std::cout << report.str() << "\n";
  return passed ? kOk : kFail;
}

void load_config(const std::string& path, Options& o) {
  json c;
  try {
    c = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Failure{kFail, "config " + path + ": " + e.what()};
  }
  try {
    if (c.contains("domain")) o.domain = c["domain"].get<std::string>();
    if (c.contains("nodes")) o.nodes = c["nodes"].get<int>();
    if (c.contains("b")) o.marked = c["b"].get<std::vector<std::string>>();
    if (c.contains("base")) o.base = c["base"].get<std::string>();
    if (c.contains("grid")) o.grid = c["grid"].get<std::vector<int>>();
    if (c.contains("out")) o.out = c["out"].get<std::string>();
    if (c.contains("seed")) o.seed = c["seed"].get<std::uint64_t>();
    if (c.contains("threshold")) o.thresholds = c["threshold"].get<std::vector<std::string>>();
    if (c.contains("map")) o.maps = c["map"].get<std::vector<std::string>>();
    if (c.contains("c")) o.coeffs = c["c"].get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw Failure{kFail, "config " + path + ": " + e.what()};
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  // The config file supplies defaults; flags parsed afterwards override them.
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    try {
      if (a == "--config" && i + 1 < argc) load_config(argv[i + 1], o);
      if (a.rfind("--config=", 0) == 0) load_config(a.substr(9), o);
    } catch (const Failure& f) {
      std::cerr << "error: " << f.message << "\n";
      return f.code;
    }
  }

  CLI::App app{"Proper holomorphic maps of multiply connected domains onto the right half plane"};
  app.require_subcommand(1);
  std::string config;
  app.add_option("--config", config, "JSON file with default option values");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--domain", o.domain, "domain JSON file");
    sub->add_option("--nodes", o.nodes, "nodes per curve (power of two, 64..8192)");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--threshold", o.thresholds, "override a threshold, key=value");
    sub->add_option("--seed", o.seed, "seed for randomized choices");
  };
  auto grid = [&](CLI::App* sub) {
    sub->add_option("--grid", o.grid, "grid size W H over the bounding box")->expected(2);
    sub->add_flag("--ppm", o.ppm, "also write a phase portrait");
  };

  int (*command)(const Options&) = nullptr;
  auto bind = [&](CLI::App* sub, int (*fn)(const Options&)) { sub->callback([&command, fn] { command = fn; }); };

  auto* domain = app.add_subcommand("domain", "domain utilities");
  domain->require_subcommand(1);
  auto* validate = domain->add_subcommand("validate", "check a domain file and print its summary");
  common(validate);
  bind(validate, cmd_domain_validate);

  auto* ahlfors = app.add_subcommand("ahlfors", "Ahlfors map onto the unit disc");
  common(ahlfors);
  grid(ahlfors);
  ahlfors->add_option("--base", o.base, "auto or x,y");
  bind(ahlfors, cmd_ahlfors);

  auto* grunsky = app.add_subcommand("grunsky", "Grunsky maps");
  grunsky->require_subcommand(1);
  auto* build = grunsky->add_subcommand("build", "build and certify a Grunsky map");
  common(build);
  grid(build);
  build->add_option("--b", o.marked, "marked point curve:t, one per curve");
  build->add_option("--base", o.base, "auto, x,y or boundary:curve:t");
  bind(build, cmd_grunsky_build);
  auto* eval = grunsky->add_subcommand("eval", "evaluate a stored map");
  common(eval);
  grid(eval);
  eval->add_option("--map", o.maps, "map JSON");
  eval->add_option("--at", o.at, "point x,y");
  bind(eval, cmd_grunsky_eval);
  auto* cert = grunsky->add_subcommand("certify", "certify a stored map");
  common(cert);
  cert->add_option("--map", o.maps, "map JSON");
  bind(cert, cmd_grunsky_certify);

  auto* semigroup = app.add_subcommand("semigroup", "combinations of Grunsky maps");
  semigroup->require_subcommand(1);
  auto* comb = semigroup->add_subcommand("combine", "sum_k c_k F_k");
  common(comb);
  grid(comb);
  comb->add_option("--map", o.maps, "map JSON (repeatable)");
  comb->add_option("--c", o.coeffs, "coefficient per map (repeatable)");
  bind(comb, cmd_semigroup_combine);
  auto* add = semigroup->add_subcommand("add-point", "add a pole");
  common(add);
  grid(add);
  add->add_option("--map", o.maps, "map JSON");
  add->add_option("--point", o.point, "new pole curve:t")->required();
  add->add_option("--c3", o.c3, "coefficient of the new term");
  bind(add, cmd_semigroup_add);
  auto* remove = semigroup->add_subcommand("remove-point", "remove a pole");
  common(remove);
  grid(remove);
  remove->add_option("--map", o.maps, "map JSON");
  remove->add_option("--point", o.point, "pole to remove curve:t")->required();
  bind(remove, cmd_semigroup_remove);

  auto* verify = app.add_subcommand("verify", "rebuild and certify a stored map");
  common(verify);
  verify->add_option("--map", o.maps, "map JSON");
  bind(verify, cmd_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kFail;
  }
  if (!command) return kFail;
  try {
    return command(o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
}
