#include "svg.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "doa/oracle.hpp"

namespace doa::cli {
namespace {

constexpr double kCanvas = 600.0;
constexpr int kContourResolution = 400;

// Marching squares over the exact level function on the drawn plane.
void draw_contour(std::ostringstream& svg, const GridSpec& grid, int example,
                  int ax, int ay, double sx, double sy) {
  const double x0 = grid.lo()(ax), x1 = grid.hi()(ax);
  const double y0 = grid.lo()(ay), y1 = grid.hi()(ay);
  RealVector probe = grid.lo();
  if (grid.slice()) probe(grid.slice()->axis) = grid.slice()->value;
  const int N = kContourResolution;
  auto level = [&](int i, int j) {
    RealVector p = probe;
    p(ax) = x0 + (x1 - x0) * i / N;
    p(ay) = y0 + (y1 - y0) * j / N;
    return exact_da_level(example, p);
  };
  std::vector<double> v(static_cast<std::size_t>((N + 1) * (N + 1)));
  for (int i = 0; i <= N; ++i) {
    for (int j = 0; j <= N; ++j) v[static_cast<std::size_t>(i * (N + 1) + j)] = level(i, j);
  }
  auto at = [&](int i, int j) { return v[static_cast<std::size_t>(i * (N + 1) + j)]; };
  auto px = [&](double i) { return (i / N) * (x1 - x0) * sx; };
  auto py = [&](double j) { return kCanvas - (j / N) * (y1 - y0) * sy; };
  svg << "<path d=\"";
  svg.precision(6);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const std::array<double, 4> c = {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
      const std::array<std::array<double, 2>, 4> corner = {
          {{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
      std::vector<std::array<double, 2>> pts;
      for (int e = 0; e < 4; ++e) {
        const double a = c[static_cast<std::size_t>(e)];
        const double b = c[static_cast<std::size_t>((e + 1) % 4)];
        if ((a < 0) != (b < 0)) {
          const double t = a / (a - b);
          const auto& p = corner[static_cast<std::size_t>(e)];
          const auto& q = corner[static_cast<std::size_t>((e + 1) % 4)];
          pts.push_back({i + p[0] + t * (q[0] - p[0]), j + p[1] + t * (q[1] - p[1])});
        }
      }
      for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
        svg << 'M' << px(pts[k][0]) << ' ' << py(pts[k][1]) << 'L'
            << px(pts[k + 1][0]) << ' ' << py(pts[k + 1][1]);
      }
    }
  }
  svg << "\" fill=\"none\" stroke=\"black\" stroke-width=\"3\"/>\n";
}

}  // namespace

std::string render_svg(const Atlas& atlas, const GridSpec& grid,
                       const std::vector<RealClassification>& cells,
                       std::optional<int> exact_example) {
  const auto& free = grid.free_axes();
  const int ax = free.at(0);
  const int ay = free.at(1);
  const int nx = grid.resolution()[static_cast<std::size_t>(ax)];
  const int ny = grid.resolution()[static_cast<std::size_t>(ay)];
  const double sx = kCanvas / (grid.hi()(ax) - grid.lo()(ax));
  const double sy = kCanvas / (grid.hi()(ay) - grid.lo()(ay));
  const double cw = kCanvas / (nx - 1);
  const double ch = kCanvas / (ny - 1);

  std::ostringstream svg;
  svg.precision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas
      << "\" height=\"" << kCanvas << "\" viewBox=\"" << -cw / 2 << ' ' << -ch / 2
      << ' ' << kCanvas + cw << ' ' << kCanvas + ch << "\">\n";
  svg << "<rect x=\"" << -cw / 2 << "\" y=\"" << -ch / 2 << "\" width=\""
      << kCanvas + cw << "\" height=\"" << kCanvas + ch << "\" fill=\"white\"/>\n";
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (!cells[k].member) continue;
    const int gen = atlas.charts()[static_cast<std::size_t>(cells[k].chart)].generation();
    const std::size_t ix = k / static_cast<std::size_t>(ny);
    const std::size_t iy = k % static_cast<std::size_t>(ny);
    svg << "<rect x=\"" << ix * cw - cw / 2 << "\" y=\""
        << kCanvas - iy * ch - ch / 2 << "\" width=\"" << cw << "\" height=\""
        << ch << "\" fill=\"" << (gen == 0 ? "#555555" : "#bbbbbb") << "\"/>\n";
  }
  if (exact_example) draw_contour(svg, grid, *exact_example, ax, ay, sx, sy);
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace doa::cli
