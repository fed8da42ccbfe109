#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cdlab/io/io.hpp"

namespace cdlab {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

// 1, 2, 5 times a power of ten, at least 1.
double nice_factor(double want) {
  if (!(want > 1)) return 1;
  const double p = std::pow(10.0, std::floor(std::log10(want)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * p >= want) return m * p;
  return 10 * p;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const LocalizationReport& rep, const NodeSet& ns, const SvgStyle& style) {
  Rect view = rep.region.rect;
  if (!(view.width() > 0 && view.height() > 0)) view = {-1, 1, -1, 1};
  // Square view with a small margin.
  const double half = std::max(view.width(), view.height()) * 0.525;
  const auto c = view.center();
  view = Rect::square(c, half);

  const int S = style.size;
  const double pad = 40;
  const double scale = (S - 2 * pad) / view.width();
  auto px = [&](double x) { return pad + (x - view.x0) * scale; };
  auto py = [&](double y) { return pad + (view.y1 - y) * scale; };
  auto inside = [&](std::complex<double> z) { return view.contains(z); };

  double rmax = 0;
  for (std::size_t i = 0; i < rep.disk_radius.size() && i < rep.node_status.size(); ++i)
    if (rep.node_status[i] != NodeStatus::Unscanned) rmax = std::max(rmax, rep.disk_radius[i]);
  double factor = style.exaggeration;
  if (!(factor > 0)) factor = rmax > 0 ? nice_factor(12.0 / (rmax * scale)) : 1;

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << S << "\" height=\"" << S + 40
    << "\" viewBox=\"0 0 " << S << ' ' << S + 40 << "\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << S << "\" height=\"" << S + 40 << "\" fill=\"white\"/>\n";
  if (!style.title.empty())
    o << "<text x=\"" << pad << "\" y=\"24\" font-family=\"monospace\" font-size=\"14\">" << escape(style.title)
      << "</text>\n";

  // Axes and frame.
  o << "<g id=\"axes\" stroke=\"#888\" stroke-width=\"1\" fill=\"none\">\n";
  o << "<rect x=\"" << fmt(pad) << "\" y=\"" << fmt(pad) << "\" width=\"" << fmt(S - 2 * pad) << "\" height=\""
    << fmt(S - 2 * pad) << "\"/>\n";
  if (view.y0 <= 0 && view.y1 >= 0)
    o << "<line x1=\"" << fmt(pad) << "\" y1=\"" << fmt(py(0)) << "\" x2=\"" << fmt(S - pad) << "\" y2=\"" << fmt(py(0))
      << "\"/>\n";
  if (view.x0 <= 0 && view.x1 >= 0)
    o << "<line x1=\"" << fmt(px(0)) << "\" y1=\"" << fmt(pad) << "\" x2=\"" << fmt(px(0)) << "\" y2=\"" << fmt(S - pad)
      << "\"/>\n";
  o << "</g>\n";
  o << "<g id=\"ticks\" font-family=\"monospace\" font-size=\"10\" fill=\"#444\">\n";
  o << "<text x=\"" << fmt(pad) << "\" y=\"" << fmt(S - pad + 14) << "\">" << label(view.x0) << "</text>\n";
  o << "<text x=\"" << fmt(S - pad) << "\" y=\"" << fmt(S - pad + 14) << "\" text-anchor=\"end\">" << label(view.x1)
    << "</text>\n";
  o << "<text x=\"" << fmt(pad - 4) << "\" y=\"" << fmt(S - pad) << "\" text-anchor=\"end\">" << label(view.y0)
    << "</text>\n";
  o << "<text x=\"" << fmt(pad - 4) << "\" y=\"" << fmt(pad + 10) << "\" text-anchor=\"end\">" << label(view.y1)
    << "</text>\n";
  o << "</g>\n";

  if (rep.region.rect.width() > 0) {
    o << "<g id=\"region\" stroke=\"#bbb\" stroke-dasharray=\"4 3\" fill=\"none\">\n";
    if (rep.region.disk)
      o << "<circle cx=\"" << fmt(px(rep.region.center.real())) << "\" cy=\"" << fmt(py(rep.region.center.imag()))
        << "\" r=\"" << fmt(rep.region.radius * scale) << "\"/>\n";
    else
      o << "<rect x=\"" << fmt(px(rep.region.rect.x0)) << "\" y=\"" << fmt(py(rep.region.rect.y1)) << "\" width=\""
        << fmt(rep.region.rect.width() * scale) << "\" height=\"" << fmt(rep.region.rect.height() * scale) << "\"/>\n";
    o << "</g>\n";
  }

  o << "<g id=\"disks\" stroke=\"#3a7\" fill=\"none\">\n";
  for (std::size_t i = 0; i < ns.size() && i < rep.node_status.size() && i < rep.disk_radius.size(); ++i) {
    if (rep.node_status[i] == NodeStatus::Unscanned) continue;
    const auto t = ns.nodes[i].to_std();
    o << "<circle cx=\"" << fmt(px(t.real())) << "\" cy=\"" << fmt(py(t.imag())) << "\" r=\""
      << fmt(std::max(rep.disk_radius[i] * factor * scale, 0.5)) << "\"/>\n";
  }
  o << "</g>\n";

  o << "<g id=\"nodes\" stroke=\"#222\" stroke-width=\"1\">\n";
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const auto t = ns.nodes[i].to_std();
    if (!inside(t)) continue;
    const double x = px(t.real()), y = py(t.imag());
    o << "<path d=\"M" << fmt(x - 3) << ' ' << fmt(y - 3) << "L" << fmt(x + 3) << ' ' << fmt(y + 3) << "M" << fmt(x - 3)
      << ' ' << fmt(y + 3) << "L" << fmt(x + 3) << ' ' << fmt(y - 3) << "\"/>\n";
  }
  o << "</g>\n";

  o << "<g id=\"zeros\">\n";
  std::size_t stray_no = 0;
  for (std::size_t i = 0; i < rep.zeros.size(); ++i) {
    const auto z = rep.zeros[i].location.to_std();
    if (!inside(z)) continue;
    const long a = i < rep.assigned.size() ? rep.assigned[i] : -1;
    const bool stray = std::find(rep.strays.begin(), rep.strays.end(), i) != rep.strays.end();
    const char* colour = a >= 0 ? "#1f5fbf" : (stray ? "#d62728" : "#999");
    o << "<circle cx=\"" << fmt(px(z.real())) << "\" cy=\"" << fmt(py(z.imag())) << "\" r=\"2.5\" fill=\"" << colour
      << "\"/>\n";
    if (stray && style.annotate_strays) {
      ++stray_no;
      o << "<text x=\"" << fmt(px(z.real()) + 4) << "\" y=\"" << fmt(py(z.imag()) - 4)
        << "\" font-family=\"monospace\" font-size=\"9\" fill=\"#d62728\">s" << stray_no << " ("
        << label(std::round(z.real() * 1000) / 1000) << ", " << label(std::round(z.imag() * 1000) / 1000)
        << ")</text>\n";
    }
  }
  o << "</g>\n";

  const double ly = S + 10;
  o << "<g id=\"legend\" font-family=\"monospace\" font-size=\"11\">\n";
  o << "<path d=\"M" << fmt(pad - 3) << ' ' << fmt(ly - 3) << "L" << fmt(pad + 3) << ' ' << fmt(ly + 3) << "M"
    << fmt(pad - 3) << ' ' << fmt(ly + 3) << "L" << fmt(pad + 3) << ' ' << fmt(ly - 3) << "\" stroke=\"#222\"/>\n";
  o << "<text x=\"" << fmt(pad + 8) << "\" y=\"" << fmt(ly + 4) << "\">node</text>\n";
  o << "<circle cx=\"" << fmt(pad + 60) << "\" cy=\"" << fmt(ly) << "\" r=\"2.5\" fill=\"#1f5fbf\"/>\n";
  o << "<text x=\"" << fmt(pad + 66) << "\" y=\"" << fmt(ly + 4) << "\">in disk</text>\n";
  o << "<circle cx=\"" << fmt(pad + 136) << "\" cy=\"" << fmt(ly) << "\" r=\"2.5\" fill=\"#d62728\"/>\n";
  o << "<text x=\"" << fmt(pad + 142) << "\" y=\"" << fmt(ly + 4) << "\">stray (" << rep.strays.size() << ")</text>\n";
  o << "<circle cx=\"" << fmt(pad + 236) << "\" cy=\"" << fmt(ly) << "\" r=\"5\" stroke=\"#3a7\" fill=\"none\"/>\n";
  o << "<text x=\"" << fmt(pad + 246) << "\" y=\"" << fmt(ly + 4) << "\">disk radius x" << label(factor) << ", M = "
    << label(rep.M) << "</text>\n";
  o << "<text x=\"" << fmt(pad) << "\" y=\"" << fmt(ly + 22) << "\">zeros " << rep.zeros.size() << ", exceptional "
    << rep.exceptional_count << ", scanned nodes " << rep.scanned_nodes << "</text>\n";
  o << "</g>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace cdlab
