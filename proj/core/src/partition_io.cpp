#include "sympar/partition_io.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sympar/error.hpp"
#include "sympar/formula_text.hpp"
#include "sympar/rational.hpp"

namespace sympar {

namespace {

[[noreturn]] void bad(int line_no, const std::string& msg) {
  throw ParseError(msg, line_no, 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

long long to_int(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) bad(line_no, "malformed integer '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    bad(line_no, "malformed integer '" + tok + "'");
  }
}

Rational to_rat(const std::string& tok, int line_no) {
  try {
    return parse_rational(tok);
  } catch (const ParseError& e) {
    bad(line_no, e.raw());
  }
}

FormulaPtr to_formula(const std::string& text, int line_no) {
  try {
    return normalize(parse_formula(text));
  } catch (const ParseError& e) {
    bad(line_no, e.raw());
  }
}

}  // namespace

void write_partition(std::ostream& os, const Partition& pt) {
  os << "sympar-partition v1\n";
  os << "program " << pt.program_name << "\n";
  os << "depth " << pt.depth_k << "\n";
  os << "complete " << (pt.complete ? 1 : 0) << "\n";
  for (const BoxDim& d : pt.box) {
    os << "dim " << d.name << ' ' << rational_to_string(d.lo) << ' '
       << rational_to_string(d.hi) << ' ' << (d.discrete ? 1 : 0) << "\n";
  }
  for (std::size_t a = 0; a < pt.action_pcs.size(); ++a) {
    os << "action " << a << ' ' << pt.action_pcs[a].size() << "\n";
    for (const FormulaPtr& pc : pt.action_pcs[a])
      os << "pc " << formula_to_string(pc) << "\n";
  }
  for (const Part& part : pt.parts) {
    os << "part " << part.id << ' '
       << (part.emptiness == Part::Emptiness::NonEmpty ? "nonempty"
                                                       : "unknown")
       << ' ' << (part.is_complement ? 1 : 0) << " prov";
    for (int idx : part.provenance) os << ' ' << idx;
    os << " witness";
    if (part.witness) {
      for (const Rational& v : *part.witness)
        os << ' ' << rational_to_string(v);
    } else {
      os << " none";
    }
    os << " formula " << formula_to_string(part.formula) << "\n";
  }
}

std::string partition_to_string(const Partition& pt) {
  std::ostringstream ss;
  write_partition(ss, pt);
  return ss.str();
}

Partition read_partition(std::istream& is) {
  Partition pt;
  std::string line;
  int no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++no;
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next_line() || line != "sympar-partition v1")
    bad(no == 0 ? 1 : no, "expected header 'sympar-partition v1'");

  bool saw_program = false, saw_depth = false, saw_complete = false;
  while (next_line()) {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "program") {
      if (!(ss >> pt.program_name)) bad(no, "program line needs a name");
      saw_program = true;
    } else if (tag == "depth") {
      if (!(ss >> pt.depth_k) || pt.depth_k < 1)
        bad(no, "depth line needs a positive integer");
      saw_depth = true;
    } else if (tag == "complete") {
      int v = 0;
      if (!(ss >> v)) bad(no, "complete line needs 0 or 1");
      pt.complete = v != 0;
      saw_complete = true;
    } else if (tag == "dim") {
      std::string name, lo, hi, disc;
      if (!(ss >> name >> lo >> hi >> disc))
        bad(no, "dim line needs name, bounds, and a discrete flag");
      BoxDim d;
      d.name = name;
      d.lo = to_rat(lo, no);
      d.hi = to_rat(hi, no);
      d.discrete = disc != "0";
      pt.box.push_back(std::move(d));
    } else if (tag == "action") {
      long long idx = 0, count = 0;
      if (!(ss >> idx >> count) || count < 0)
        bad(no, "action line needs an index and a count");
      if (idx != static_cast<long long>(pt.action_pcs.size()))
        bad(no, "action blocks must appear in index order");
      std::vector<FormulaPtr> pcs;
      for (long long i = 0; i < count; ++i) {
        if (!next_line()) bad(no + 1, "unexpected end of file inside action block");
        if (line.rfind("pc ", 0) != 0) bad(no, "expected a pc line");
        pcs.push_back(to_formula(line.substr(3), no));
      }
      pt.action_pcs.push_back(std::move(pcs));
    } else if (tag == "part") {
      std::size_t fpos = line.find(" formula ");
      if (fpos == std::string::npos) bad(no, "part line has no formula field");
      std::vector<std::string> toks = split_ws(line.substr(0, fpos));
      std::string ftext = line.substr(fpos + 9);
      std::size_t n_actions = pt.action_pcs.size();
      std::size_t n_dims = pt.box.size();
      // part ID STATUS COMPL prov I1..IA witness V1..VD|none
      std::size_t want_min = 5 + n_actions + 1;
      if (toks.size() < want_min) bad(no, "part line is truncated");
      Part part;
      part.id = static_cast<int>(to_int(toks[1], no));
      if (toks[2] == "nonempty") {
        part.emptiness = Part::Emptiness::NonEmpty;
      } else if (toks[2] == "unknown") {
        part.emptiness = Part::Emptiness::Unknown;
      } else {
        bad(no, "part status must be nonempty or unknown");
      }
      part.is_complement = toks[3] != "0";
      if (toks[4] != "prov") bad(no, "expected prov field");
      std::size_t at = 5;
      for (std::size_t a = 0; a < n_actions; ++a)
        part.provenance.push_back(static_cast<int>(to_int(toks[at++], no)));
      if (at >= toks.size() || toks[at] != "witness")
        bad(no, "expected witness field");
      ++at;
      if (at < toks.size() && toks[at] == "none") {
        ++at;
      } else {
        ConcreteState w;
        for (std::size_t d = 0; d < n_dims; ++d) {
          if (at >= toks.size()) bad(no, "witness value list is truncated");
          w.push_back(to_rat(toks[at++], no));
        }
        part.witness = std::move(w);
      }
      if (at != toks.size()) bad(no, "trailing tokens on part line");
      part.formula = to_formula(ftext, no);
      if (part.id != static_cast<int>(pt.parts.size()))
        bad(no, "part ids must be sequential from 0");
      pt.parts.push_back(std::move(part));
    } else {
      bad(no, "unrecognized record '" + tag + "'");
    }
  }

  if (!saw_program || !saw_depth || !saw_complete)
    bad(no == 0 ? 1 : no, "dump is missing a program, depth, or complete line");
  if (pt.box.empty()) bad(no, "dump declares no dimensions");
  return pt;
}

Partition partition_from_string(const std::string& text) {
  std::istringstream ss(text);
  return read_partition(ss);
}

void save_partition(const std::string& path, const Partition& pt) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  write_partition(os, pt);
  os.flush();
  if (!os) throw Error("write to '" + path + "' failed");
}

Partition load_partition(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path + "' for reading");
  return read_partition(is);
}

namespace {

// Center of raster cell i out of n along one dimension; discrete dims
// snap to the integer grid so cell colors match locate() on real states.
Rational cell_center(const BoxDim& d, int i, int n) {
  Rational t(2 * i + 1, 2 * n);
  Rational v = d.lo + (d.hi - d.lo) * t;
  if (d.discrete) v = Rational(rational_floor(v));
  return v;
}

struct Rgb {
  int r, g, b;
};

Rgb hsv_to_rgb(double h, double s, double v) {
  double i = std::floor(h * 6.0);
  double f = h * 6.0 - i;
  double p = v * (1.0 - s);
  double q = v * (1.0 - f * s);
  double t = v * (1.0 - (1.0 - f) * s);
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(i) % 6) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
  }
  auto ch = [](double x) { return static_cast<int>(std::lround(x * 255.0)); };
  return {ch(r), ch(g), ch(b)};
}

Rgb part_color(const Partition& pt, int id) {
  if (pt.parts[static_cast<std::size_t>(id)].is_complement)
    return {128, 128, 128};
  double h = std::fmod((id + 1) * 0.6180339887498949, 1.0);
  return hsv_to_rgb(h, 0.55, 0.93);
}

}  // namespace

void write_partition_ppm(std::ostream& os, const Partition& pt, int width,
                         int height) {
  if (pt.box.empty())
    throw ValidationError("cannot rasterize a partition with no dimensions");
  if (width < 1 || height < 1)
    throw ValidationError("raster dimensions must be positive");
  const bool flat = pt.box.size() == 1;
  ConcreteState base(pt.box.size());
  for (std::size_t i = 0; i < pt.box.size(); ++i) base[i] = pt.box[i].lo;

  os << "P3\n" << width << ' ' << height << "\n255\n";
  for (int py = 0; py < height; ++py) {
    for (int px = 0; px < width; ++px) {
      ConcreteState s = base;
      s[0] = cell_center(pt.box[0], px, width);
      if (!flat) s[1] = cell_center(pt.box[1], height - 1 - py, height);
      Rgb c{0, 0, 0};  // undecidable pixels stay black
      try {
        c = part_color(pt, locate(pt, s));
      } catch (const Error&) {
      }
      os << c.r << ' ' << c.g << ' ' << c.b;
      os << (px + 1 == width ? '\n' : ' ');
    }
  }
}

void save_partition_ppm(const std::string& path, const Partition& pt,
                        int width, int height) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  write_partition_ppm(os, pt, width, height);
  os.flush();
  if (!os) throw Error("write to '" + path + "' failed");
}

}  // namespace sympar
