#include "vstates/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace vstates {

namespace {

std::string colour(std::size_t i, std::size_t n) {
  // red for the first state, black for the last
  const double t = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
  const int red = static_cast<int>(std::lround(255.0 * (1.0 - t)));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x0000", red);
  return buf;
}

std::string polyline(const VortexContourCoeffs& c, bool outer, int samples) {
  std::ostringstream os;
  os.precision(7);
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * std::numbers::pi * i / samples;
    const cplx z = outer ? c.z1(t) : c.z2(t);
    os << (i == 0 ? "M" : " L") << z.real() << ',' << z.imag();
  }
  os << " Z";
  return os.str();
}

}  // namespace

std::string render_svg(std::vector<StateFile> states, const RenderOptions& opt) {
  std::stable_sort(states.begin(), states.end(),
                   [](const StateFile& a, const StateFile& b) { return a.omega < b.omega; });

  double extent = 1.0;
  for (const StateFile& s : states) {
    const VortexContourCoeffs c = s.coeffs();
    for (int i = 0; i < opt.samples; ++i) {
      extent = std::max(extent, c.rho1(2.0 * std::numbers::pi * i / opt.samples));
    }
  }
  extent *= 1.08;
  const double stroke = 2.0 * extent / opt.size_px;

  std::ostringstream os;
  os.precision(7);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.size_px << "\" height=\""
     << opt.size_px << "\" viewBox=\"" << -extent << ' ' << -extent << ' ' << 2 * extent << ' '
     << 2 * extent << "\" preserveAspectRatio=\"xMidYMid meet\">\n";
  os << "<rect x=\"" << -extent << "\" y=\"" << -extent << "\" width=\"" << 2 * extent
     << "\" height=\"" << 2 * extent << "\" fill=\"white\"/>\n";
  // math orientation: y up
  os << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"" << stroke << "\">\n";
  for (std::size_t i = 0; i < states.size(); ++i) {
    const VortexContourCoeffs c = states[i].coeffs();
    const std::string col = colour(i, states.size());
    os << "  <g stroke=\"" << col << "\" data-omega=\"" << states[i].omega << "\">\n";
    os << "    <path class=\"outer\" d=\"" << polyline(c, true, opt.samples) << "\"/>\n";
    os << "    <path class=\"inner\" d=\"" << polyline(c, false, opt.samples) << "\"/>\n";
    os << "  </g>\n";
  }
  os << "</g>\n";

  if (opt.legend && !states.empty()) {
    const double fs = 0.045 * extent;
    const double x0 = -extent + 0.5 * fs;
    double y = -extent + 1.3 * fs;
    os << "<g font-family=\"sans-serif\" font-size=\"" << fs << "\">\n";
    os << "  <text x=\"" << x0 << "\" y=\"" << y << "\">b = " << states.front().b
       << ", m = " << states.front().m << "; colour red to black by increasing Omega</text>\n";
    // long branch overlays list at most about a dozen entries, always the ends
    const std::size_t stride = states.size() > 12 ? (states.size() + 10) / 11 : 1;
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (i % stride != 0 && i + 1 != states.size()) continue;
      y += 1.2 * fs;
      os << "  <text x=\"" << x0 << "\" y=\"" << y << "\" fill=\"" << colour(i, states.size())
         << "\">Omega = " << states[i].omega << "</text>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace vstates
