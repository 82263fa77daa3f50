#include "manifold_splines/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "manifold_splines/error.hpp"

namespace manifold_splines {

namespace {

using json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view field, std::size_t line) {
  field = trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw io_error("line " + std::to_string(line) + ": cannot parse number '" + std::string(field) + "'");
  }
  return v;
}

// Calls fn(line_number, line) for each non-empty line that is not a comment.
template <class Fn>
void for_each_data_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    fn(line_no, line);
  }
}

void check_keys(const json& j, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw invalid_input("unknown kernel spec key '" + key + "'");
  }
}

}  // namespace

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw io_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw io_error("cannot move output into place at " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string point_csv(const point_set& pts) {
  std::string out = "# manifold=" + std::string(manifold_name(pts.on())) + "\n";
  for (const point& p : pts) {
    for (int i = 0; i < p.size(); ++i) {
      if (i > 0) out += ',';
      out += format_double(p[i]);
    }
    out += '\n';
  }
  return out;
}

point_set parse_point_csv(std::string_view text) {
  std::optional<manifold> m;
  {
    std::string_view rest = text;
    while (!rest.empty()) {
      const auto nl = rest.find('\n');
      const std::string_view line = trim(rest.substr(0, nl));
      rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
      constexpr std::string_view tag = "# manifold=";
      if (line.starts_with(tag)) {
        m = parse_manifold(trim(line.substr(tag.size())));
        break;
      }
    }
  }
  if (!m) throw io_error("point CSV lacks a '# manifold=' header");
  std::vector<point> points;
  const int width = coord_count(*m);
  for_each_data_line(text, [&](std::size_t line_no, std::string_view line) {
    std::vector<double> coords;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      coords.push_back(parse_double(line.substr(start, comma - start), line_no));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (static_cast<int>(coords.size()) != width) {
      throw io_error("line " + std::to_string(line_no) + ": expected " + std::to_string(width) + " coordinates for " +
                     std::string(manifold_name(*m)) + ", got " + std::to_string(coords.size()));
    }
    points.push_back(point::on(*m, coords));
  });
  return {*m, std::move(points)};
}

point_set read_point_csv(const std::filesystem::path& path) { return parse_point_csv(read_file(path)); }

Eigen::VectorXd parse_values_csv(std::string_view text) {
  std::vector<double> values;
  for_each_data_line(text, [&](std::size_t line_no, std::string_view line) {
    values.push_back(parse_double(line, line_no));
  });
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

namespace {

json kernel_to_json(const kernel_spec& spec) {
  json j;
  j["manifold"] = manifold_name(spec.on);
  j["m"] = spec.m;
  if (spec.is_closed()) {
    j["form"] = "closed";
  } else {
    const auto& s = spec.spectral_form();
    j["form"] = "spectral";
    if (std::holds_alternative<restricted_surface_spline>(s.rule)) {
      j["coeff_rule"] = "restricted_surface_spline";
    } else if (std::holds_alternative<so3_surface_spline>(s.rule)) {
      j["coeff_rule"] = "so3_surface_spline";
    } else {
      j["coeff_rule"] = "inverse_q";
      j["poly_coeffs"] = std::get<inverse_q>(s.rule).poly_coeffs;
    }
    j["L_max"] = s.L_max;
    j["J_degree"] = s.J_degree;
    json values = json::object();
    for (const auto& [l, v] : s.J_values) values[std::to_string(l)] = v;
    j["J_values"] = values;
  }
  j["scale"] = spec.scale;
  return j;
}

kernel_spec kernel_from_json(const json& j) {
  if (!j.is_object()) throw invalid_input("kernel spec must be a JSON object");
  check_keys(j, {"manifold", "m", "form", "scale", "coeff_rule", "poly_coeffs", "L_max", "J_degree", "J_values"});
  kernel_spec spec;
  try {
    spec.on = parse_manifold(j.at("manifold").get<std::string>());
    spec.m = j.at("m").get<int>();
    spec.scale = j.value("scale", 1.0);
    const std::string form = j.value("form", std::string("closed"));
    if (form == "closed") {
      for (const char* key : {"coeff_rule", "poly_coeffs", "L_max", "J_degree", "J_values"}) {
        if (j.contains(key)) throw invalid_input(std::string("key '") + key + "' needs form = spectral");
      }
    } else if (form == "spectral") {
      spectral s;
      const std::string rule = j.at("coeff_rule").get<std::string>();
      if (rule == "restricted_surface_spline") {
        s.rule = restricted_surface_spline{};
      } else if (rule == "so3_surface_spline") {
        s.rule = so3_surface_spline{};
      } else if (rule == "inverse_q") {
        s.rule = inverse_q{j.at("poly_coeffs").get<std::vector<double>>()};
      } else {
        throw invalid_input("unknown coefficient rule '" + rule + "'");
      }
      if (rule != "inverse_q" && j.contains("poly_coeffs")) {
        throw invalid_input("poly_coeffs only apply to the inverse_q rule");
      }
      s.L_max = j.value("L_max", spec.on == manifold::so3 ? 300 : 500);
      s.J_degree = j.value("J_degree", -1);
      if (j.contains("J_values")) {
        for (const auto& [key, value] : j.at("J_values").items()) {
          int l = 0;
          const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), l);
          if (ec != std::errc() || ptr != key.data() + key.size()) {
            throw invalid_input("J_values keys must be integer degrees, got '" + key + "'");
          }
          s.J_values[l] = value.get<double>();
        }
      }
      spec.form = std::move(s);
    } else {
      throw invalid_input("kernel form must be 'closed' or 'spectral', got '" + form + "'");
    }
  } catch (const json::exception& e) {
    throw invalid_input(std::string("malformed kernel spec: ") + e.what());
  }
  validate(spec);
  return spec;
}

}  // namespace

std::string kernel_spec_json(const kernel_spec& spec) { return kernel_to_json(spec).dump(2) + "\n"; }

kernel_spec parse_kernel_spec(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw invalid_input(std::string("kernel spec is not valid JSON: ") + e.what());
  }
  return kernel_from_json(j);
}

std::string interpolant_json(const interpolant& s, std::string_view centers_file) {
  json j;
  j["kernel"] = kernel_to_json(s.system->kernel());
  j["centers_file"] = centers_file;
  j["a"] = std::vector<double>(s.a.data(), s.a.data() + s.a.size());
  j["b"] = std::vector<double>(s.b.data(), s.b.data() + s.b.size());
  j["residual"] = s.residual;
  j["side_residual"] = s.side_residual;
  j["condition"] = s.system->condition();
  return j.dump(2) + "\n";
}

std::string mesh_stats_json(const point_set& pts, const mesh_stats& s) {
  json j;
  j["manifold"] = manifold_name(pts.on());
  j["N"] = pts.size();
  j["h"] = s.h;
  j["q"] = s.q;
  j["rho"] = s.rho;
  return j.dump(2) + "\n";
}

}  // namespace manifold_splines
