#include <filesystem>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "manifold_splines/error.hpp"
#include "manifold_splines/io.hpp"
#include "test_support.hpp"

using namespace manifold_splines;

TEST_CASE("point CSV round trip is exact") {
  for (const manifold m : {manifold::sphere1, manifold::sphere2, manifold::so3}) {
    CAPTURE(manifold_name(m));
    const point_set pts = random_points(m, 50, 3);
    const std::string text = point_csv(pts);
    CHECK(text.rfind("# manifold=" + std::string(manifold_name(m)), 0) == 0);
    const point_set back = parse_point_csv(text);
    CHECK(back.on() == m);
    CHECK(back.points() == pts.points());
    CHECK(point_csv(back) == text);
  }
}

TEST_CASE("point CSV validation") {
  CHECK_THROWS_AS(parse_point_csv("0,0,1\n"), io_error);
  CHECK_THROWS_AS(parse_point_csv("# manifold=sphere2\n0,0\n"), io_error);
  CHECK_THROWS_AS(parse_point_csv("# manifold=sphere2\n0,0,2\n"), invalid_input);
  CHECK_THROWS_AS(parse_point_csv("# manifold=torus\n0,0,1\n"), invalid_input);
  const point_set p = parse_point_csv("# manifold=sphere2\n# seed=4\n0,0,1\n1,0,0\n");
  CHECK(p.size() == 2);
  CHECK_THROWS_AS(read_point_csv("/nonexistent/pts.csv"), io_error);
}

TEST_CASE("values CSV") {
  const Eigen::VectorXd v = parse_values_csv("# values\n1.5\n-2\n");
  REQUIRE(v.size() == 2);
  CHECK(v(0) == 1.5);
  CHECK(v(1) == -2.0);
  CHECK_THROWS_AS(parse_values_csv("abc\n"), io_error);
}

TEST_CASE("kernel spec JSON") {
  for (const char* name : {"rss-s2-m2", "rss-s1-m1", "so3-ss-m3"}) {
    const kernel_spec k = preset(name);
    CHECK(kernel_spec_json(parse_kernel_spec(kernel_spec_json(k))) == kernel_spec_json(k));
  }
  kernel_spec s = polyharmonic_from_q(manifold::sphere2, {1, 2, 1}, -1, 120);
  const kernel_spec back = parse_kernel_spec(kernel_spec_json(s));
  CHECK(back.spectral_form().L_max == 120);
  CHECK(spectral_coeff(back, 7) == spectral_coeff(s, 7));

  const kernel_spec parsed = parse_kernel_spec(
      R"({"manifold": "sphere2", "m": 2, "form": "spectral", "coeff_rule": "restricted_surface_spline",
          "L_max": 80, "J_degree": 1, "J_values": {"0": 0.5}})");
  CHECK(spectral_coeff(parsed, 0) == 0.5);
  CHECK(spectral_coeff(parsed, 3) == doctest::Approx(1.0 / (2 * 3 * 4 * 5)));

  CHECK_THROWS_AS(parse_kernel_spec(R"({"manifold": "sphere2", "m": 2, "form": "closed", "colour": 1})"),
                  invalid_input);
  CHECK_THROWS_AS(parse_kernel_spec(R"({"manifold": "sphere2", "m": 1, "form": "closed"})"), invalid_input);
  CHECK_THROWS_AS(parse_kernel_spec("{not json"), invalid_input);
}

TEST_CASE("atomic write and reports") {
  const auto dir = std::filesystem::temp_directory_path() / "manifold_splines_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.txt";
  atomic_write(path, "first");
  atomic_write(path, "second");
  CHECK(read_file(path) == "second");
  CHECK_FALSE(std::filesystem::exists(dir / "out.txt.tmp"));
  CHECK_THROWS_AS(atomic_write("/nonexistent/dir/x.txt", "x"), io_error);
  std::filesystem::remove_all(dir);

  CHECK(format_double(0.1) == "0.10000000000000001");

  stability_report r;
  r.p = std::numeric_limits<double>::infinity();
  r.ratio_low = 1.0;
  r.ratio_high = 2.0;
  r.trials = 2;
  r.ratios = {1.0, 2.0};
  const auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["p"] == "inf");
  CHECK(j["ratio_high"] == 2.0);
  const std::string csv = report_csv(r);
  CHECK(csv.find('#') == 0);
}
