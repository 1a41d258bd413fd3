// fareyshear: command-line front end for the farey_shear library.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "farey/classify.hpp"
#include "farey/farey.hpp"
#include "farey/io.hpp"
#include "farey/lambda.hpp"
#include "farey/moebius.hpp"
#include "farey/render.hpp"
#include "farey/shear.hpp"

using namespace farey;

namespace {

struct Common {
  std::size_t depth = 8;
  std::string window_m = "-5:5";
  std::string window_k = "0:5";
  std::string tips = "inf,0,1";
  std::string format = "csv";
  std::string out = "-";
};

void warn(const std::string& message) { std::cerr << "warning: " << message << "\n"; }

long long parse_integer(std::string_view text, const std::string& what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("bad integer '" + std::string(text) + "' in " + what);
  return v;
}

std::pair<long long, long long> parse_range(const std::string& text, const std::string& what) {
  auto colon = text.find(':', 1);
  if (colon == std::string::npos) throw std::invalid_argument(what + " must be lo:hi, got '" + text + "'");
  long long lo = parse_integer(std::string_view(text).substr(0, colon), what);
  long long hi = parse_integer(std::string_view(text).substr(colon + 1), what);
  if (lo > hi) throw std::invalid_argument(what + " is empty: " + text);
  return {lo, hi};
}

std::vector<Real> parse_numbers(const std::string& text) {
  std::vector<Real> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("bad number '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::string window_text(const FanWindow& w) {
  return std::to_string(w.m_lo) + ":" + std::to_string(w.m_hi) + "," + std::to_string(w.k_lo) + ":" +
         std::to_string(w.k_hi);
}

bool window_fits(const ShearMap& probe, const std::vector<ExtendedRational>& tips, long long m, long long k) {
  for (const auto& p : tips)
    if (!fan_window_within_depth(probe, p, m, k)) return false;
  return true;
}

// Largest sub-window whose fan edges all lie within depth: the longest run of
// m valid at k_lo (lowest first), then the largest k valid across that run.
FanWindow clamp_window(const FanWindow& w, std::size_t depth, const std::vector<ExtendedRational>& tips,
                       bool& clamped) {
  ShearMap probe(depth);
  clamped = false;
  bool all = true;
  for (long long m = w.m_lo; m <= w.m_hi && all; ++m)
    for (long long k = w.k_lo; k <= w.k_hi && all; ++k) all = window_fits(probe, tips, m, k);
  if (all) return w;
  clamped = true;
  long long best_lo = 0, best_len = 0, run_lo = 0, run_len = 0;
  for (long long m = w.m_lo; m <= w.m_hi; ++m) {
    if (window_fits(probe, tips, m, w.k_lo)) {
      if (run_len == 0) run_lo = m;
      if (++run_len > best_len) best_lo = run_lo, best_len = run_len;
    } else {
      run_len = 0;
    }
  }
  if (best_len == 0) throw std::invalid_argument("window " + window_text(w) + " lies entirely beyond depth " +
                                                 std::to_string(depth));
  FanWindow out{best_lo, best_lo + best_len - 1, w.k_lo, w.k_lo};
  for (long long k = w.k_lo + 1; k <= w.k_hi; ++k) {
    bool ok = true;
    for (long long m = out.m_lo; m <= out.m_hi && ok; ++m) ok = window_fits(probe, tips, m, k);
    if (!ok) break;
    out.k_hi = k;
  }
  warn("window " + window_text(w) + " exceeds depth " + std::to_string(depth) + "; clamped to " +
       window_text(out));
  return out;
}

struct ResolvedWindow {
  std::vector<ExtendedRational> tips;
  FanWindow window;
  bool clamped = false;
};

ResolvedWindow resolve_window(const Common& c, std::size_t depth) {
  ResolvedWindow r;
  r.tips = parse_vertex_list(c.tips);
  if (r.tips.empty()) throw std::invalid_argument("--tips is empty");
  auto [m_lo, m_hi] = parse_range(c.window_m, "--window-m");
  auto [k_lo, k_hi] = parse_range(c.window_k, "--window-k");
  if (k_lo < 0) throw std::invalid_argument("--window-k must be non-negative");
  r.window = clamp_window(FanWindow{m_lo, m_hi, k_lo, k_hi}, depth, r.tips, r.clamped);
  return r;
}

std::string tips_text(const std::vector<ExtendedRational>& tips) {
  std::string out;
  for (const auto& p : tips) out += (out.empty() ? "" : ";") + p.key();
  return out;
}

Summary window_summary(const ResolvedWindow& r, std::size_t depth) {
  return {{"depth", std::to_string(depth)},
          {"tips", tips_text(r.tips)},
          {"window", window_text(r.window)},
          {"clamped", r.clamped ? "yes" : "no"}};
}

void emit(const Common& c, const std::string& csv, const Summary& summary) {
  if (c.format == "json")
    write_output(c.out, csv_to_json(csv, summary));
  else
    write_output(c.out, with_summary_csv(csv, summary));
}

ShearMap load_shear(const std::string& path) { return read_shear_json(read_file(path)); }
LambdaMap load_lambda(const std::string& path) { return read_lambda_json(read_file(path)); }

std::vector<FareyEdge> parse_chain(const std::string& text) {
  auto edges = parse_edge_list(text);
  if (edges.size() < 2) throw std::invalid_argument("--chain needs at least two edges");
  return edges;
}

std::size_t resolve_terms(long long terms, const Chain& chain) {
  if (terms < 0) return chain.size() - 1;
  if (terms == 0 || static_cast<std::size_t>(terms) >= chain.size())
    throw std::invalid_argument("--terms must be between 1 and chain length - 1");
  return static_cast<std::size_t>(terms);
}

void add_depth(CLI::App* cmd, Common& c) {
  cmd->add_option("--depth", c.depth, "Farey generation depth")->capture_default_str();
}

void add_window(CLI::App* cmd, Common& c) {
  cmd->add_option("--window-m", c.window_m, "fan index range lo:hi")->capture_default_str();
  cmd->add_option("--window-k", c.window_k, "fan half-width range lo:hi")->capture_default_str();
  cmd->add_option("--tips", c.tips, "comma-separated fan tips")->capture_default_str();
}

void add_output(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  cmd->add_option("--out", c.out, "output path, - for stdout")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shear coordinates on the Farey tessellation"};
  app.require_subcommand(1);
  Common c;
  std::string shear_path, lambda_path, family, params, vertices, chain_text, buckets = "1,2,3,4";
  std::string model = "disk", highlight, shear_b;
  long long terms = -1;
  double anchor = 1, pinch = 0, stroke = 1;
  int size = 800;

  auto* tessellate = app.add_subcommand("tessellate", "list edges and triangles by generation");
  add_depth(tessellate, c);
  add_output(tessellate, c);

  auto* from_map = app.add_subcommand("shear-from-map", "shear file of a built-in homeomorphism");
  from_map->add_option("--family", family, "moebius, piecewise_linear, power or fan_earthquake")->required();
  from_map->add_option("--params", params, "comma-separated parameters");
  add_depth(from_map, c);
  from_map->add_option("--out", c.out, "output path, - for stdout")->capture_default_str();

  auto* char_map = app.add_subcommand("char-map", "evaluate the characteristic map at vertices");
  char_map->add_option("--shear", shear_path, "shear file")->required();
  char_map->add_option("--vertices", vertices, "comma-separated vertices")->required();
  add_output(char_map, c);

  auto* qs = app.add_subcommand("qs-check", "fan-ratio bound over a window");
  qs->add_option("--shear", shear_path, "shear file")->required();
  add_window(qs, c);
  add_output(qs, c);

  auto* sym = app.add_subcommand("sym-check", "deviation of fan ratios from 1 by generation");
  sym->add_option("--shear", shear_path, "shear file")->required();
  sym->add_option("--buckets", buckets, "comma-separated generation thresholds")->capture_default_str();
  add_window(sym, c);
  add_output(sym, c);

  auto* homeo = app.add_subcommand("homeo-check", "leaf-length series along a chain");
  homeo->add_option("--shear", shear_path, "shear file")->required();
  homeo->add_option("--chain", chain_text, "comma-separated edge keys")->required();
  homeo->add_option("--terms", terms, "number of terms (default: chain length - 1)");
  homeo->add_option("--anchor", anchor, "scale of the first leaf segment")->capture_default_str();
  add_output(homeo, c);

  auto* distance = app.add_subcommand("distance", "fan-ratio proximity of two shear maps");
  distance->add_option("a", shear_path, "first shear file")->required();
  distance->add_option("b", shear_b, "second shear file")->required();
  add_window(distance, c);
  add_output(distance, c);

  auto* lambda = app.add_subcommand("lambda", "lambda-length tools");
  lambda->require_subcommand(1);
  auto* to_shear = lambda->add_subcommand("to-shear", "shear file of a lambda file");
  to_shear->add_option("--lambda", lambda_path, "lambda file")->required();
  add_depth(to_shear, c);
  to_shear->add_option("--out", c.out, "output path, - for stdout")->capture_default_str();
  auto* check_e = lambda->add_subcommand("check-e", "wedge-length ratios over a window");
  check_e->add_option("--lambda", lambda_path, "lambda file")->required();
  check_e->add_option("--pinch", pinch, "also check 1/K <= lambda <= K on the support");
  add_window(check_e, c);
  add_output(check_e, c);
  auto* series_d = lambda->add_subcommand("series-d", "lambda series along a chain");
  series_d->add_option("--lambda", lambda_path, "lambda file")->required();
  series_d->add_option("--chain", chain_text, "comma-separated edge keys")->required();
  series_d->add_option("--terms", terms, "number of terms (default: chain length - 1)");
  add_output(series_d, c);
  auto* develop_cmd = lambda->add_subcommand("develop", "vertex positions and horocycles");
  develop_cmd->add_option("--lambda", lambda_path, "lambda file")->required();
  add_depth(develop_cmd, c);
  add_output(develop_cmd, c);

  auto* render = app.add_subcommand("render", "SVG of the image tessellation");
  auto* render_shear = render->add_option("--shear", shear_path, "shear file");
  auto* render_lambda = render->add_option("--lambda", lambda_path, "lambda file");
  render_shear->excludes(render_lambda);
  render->add_option("--model", model, "disk or half-plane-clip")
      ->check(CLI::IsMember({"disk", "half-plane-clip"}))
      ->capture_default_str();
  render->add_option("--size", size, "image size in pixels")->capture_default_str();
  render->add_option("--stroke", stroke, "stroke width")->capture_default_str();
  render->add_option("--highlight", highlight, "comma-separated edge keys");
  add_depth(render, c);
  render->add_option("--out", c.out, "output path, - for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (tessellate->parsed()) {
      std::string csv = tessellation_csv(c.depth);
      emit(c, csv, {{"depth", std::to_string(c.depth)}});
    } else if (from_map->parsed()) {
      ShearMap s = shear_from_homeo(builtin_homeo(family, parse_numbers(params)), c.depth);
      write_output(c.out, write_shear_json(s));
    } else if (char_map->parsed()) {
      ShearMap s = load_shear(shear_path);
      auto points = parse_vertex_list(vertices);
      std::vector<Real> values;
      for (const auto& v : points) values.push_back(char_map_eval(s, v));
      emit(c, char_map_csv(points, values), {{"depth", std::to_string(s.depth())}});
    } else if (qs->parsed()) {
      ShearMap s = load_shear(shear_path);
      auto r = resolve_window(c, s.depth());
      QsReport report = qs_bound(s, r.tips, r.window);
      Summary summary = window_summary(r, s.depth());
      summary.emplace_back("m_hat", format_real(report.m_hat));
      summary.emplace_back("truncated", report.truncated ? "yes" : "no");
      emit(c, fan_report_csv(report), summary);
    } else if (sym->parsed()) {
      ShearMap s = load_shear(shear_path);
      auto r = resolve_window(c, s.depth());
      std::vector<std::size_t> thresholds;
      for (Real b : parse_numbers(buckets)) {
        if (b < 0 || b != std::floor(b)) throw std::invalid_argument("--buckets must be non-negative integers");
        thresholds.push_back(static_cast<std::size_t>(b));
      }
      auto report = symmetric_diagnostic(s, r.tips, r.window, thresholds);
      Real worst = 0;
      for (const auto& b : report) worst = std::max(worst, b.max_deviation);
      Summary summary = window_summary(r, s.depth());
      summary.emplace_back("max_deviation", format_real(worst));
      emit(c, symmetric_csv(report), summary);
    } else if (homeo->parsed()) {
      ShearMap s = load_shear(shear_path);
      Chain chain = validate_chain(parse_chain(chain_text));
      ChainSeriesReport report = chain_series(s, chain, resolve_terms(terms, chain), {}, anchor);
      emit(c, chain_series_csv(report),
           {{"depth", std::to_string(s.depth())},
            {"terms", std::to_string(report.terms.size())},
            {"verdict", to_string(report.verdict)},
            {"trend", format_real(report.trend)},
            {"truncated", report.truncated ? "yes" : "no"}});
    } else if (distance->parsed()) {
      ShearMap a = load_shear(shear_path), b = load_shear(shear_b);
      std::size_t depth = std::min(a.depth(), b.depth());
      auto r = resolve_window(c, depth);
      Real proximity = teich_proximity(a, b, r.tips, r.window);
      Summary summary = window_summary(r, depth);
      emit(c, "proximity\n" + format_real(proximity) + "\n", summary);
    } else if (to_shear->parsed()) {
      write_output(c.out, write_shear_json(shear_from_lambda(load_lambda(lambda_path), c.depth)));
    } else if (check_e->parsed()) {
      LambdaMap lam = load_lambda(lambda_path);
      auto r = resolve_window(c, lam.depth());
      std::ostringstream csv;
      csv << "tip,m,k,ratio\n";
      Real bound = 1;
      for (const auto& p : r.tips)
        for (long long m = r.window.m_lo; m <= r.window.m_hi; ++m)
          for (long long k = r.window.k_lo; k <= r.window.k_hi; ++k) {
            Real ratio = thmE_ratio(lam, p, m, k);
            bound = std::max({bound, ratio, 1 / ratio});
            csv << p.key() << "," << m << "," << k << "," << format_real(ratio) << "\n";
          }
      Summary summary = window_summary(r, lam.depth());
      summary.emplace_back("k_hat", format_real(bound));
      if (pinch > 0) {
        PinchedReport pinched = pinched_check(lam, pinch);
        summary.emplace_back("pinched", pinched.pinched ? (pinched.vacuous ? "vacuous" : "yes") : "no");
      }
      emit(c, csv.str(), summary);
    } else if (series_d->parsed()) {
      LambdaMap lam = load_lambda(lambda_path);
      Chain chain = validate_chain(parse_chain(chain_text));
      LambdaSeriesReport report = thmD_series(lam, chain, resolve_terms(terms, chain));
      emit(c, lambda_series_csv(report),
           {{"depth", std::to_string(lam.depth())},
            {"terms", std::to_string(report.terms.size())},
            {"verdict", to_string(report.verdict)},
            {"trend", format_real(report.trend)}});
    } else if (develop_cmd->parsed()) {
      DecoratedRealization real = develop(load_lambda(lambda_path), c.depth);
      if (real.defaulted) warn("realization uses edges beyond the lambda file's depth");
      emit(c, realization_csv(real), {{"vertex_depth", std::to_string(real.vertex_depth)}});
    } else if (render->parsed()) {
      RenderSpec spec;
      spec.depth = c.depth;
      spec.model = model == "disk" ? RenderModel::Disk : RenderModel::HalfPlaneClip;
      spec.size = size;
      spec.stroke_width = stroke;
      for (const auto& e : parse_edge_list(highlight)) spec.highlight.insert(e.key());
      std::optional<VertexMap> h;
      if (!lambda_path.empty()) {
        DecoratedRealization real = develop(load_lambda(lambda_path), c.depth);
        if (real.defaulted) warn("rendering edges beyond the lambda file's depth");
        h = real.as_vertex_map();
      } else if (!shear_path.empty()) {
        CharacteristicMap map(load_shear(shear_path), c.depth + 1);
        if (map.truncated()) warn("rendering edges beyond the shear file's depth");
        h = map.as_vertex_map();
      } else {
        h = VertexMap([](const ExtendedRational& x) { return x.to_real(); }, "identity");
      }
      write_output(c.out, render_svg(*h, spec));
    }
  } catch (const DegenerateError& e) {
    std::cerr << "error: numerical degeneracy: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
