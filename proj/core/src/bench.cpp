#include "sympar/bench.hpp"

#include <sstream>

#include "sympar/error.hpp"

namespace sympar {

namespace {

// Scaled constant as DSL literal text.
std::string sc(long base, long scale) {
  return rational_to_string(Rational(base) * scale);
}
std::string sc(const Rational& base, long scale) {
  return rational_to_string(base * scale);
}

std::string navigation_source(long s) {
  std::ostringstream o;
  o << "env navigation\n"
    << "state x in [0, " << sc(10, s) << "]\n"
    << "state y in [0, " << sc(10, s) << "]\n"
    << "param w = " << sc(10, s) << "\n"
    << "param m = " << sc(1, s) << "\n"
    << "param food_y = " << sc(2, s) << "\n"
    << "param goal_x = " << sc(6, s) << "\n"
    << "param trap_x = " << sc(8, s) << "\n"
    << "actions dx dy\n"
    << "  U 0 1\n"
    << "  D 0 -1\n"
    << "  R 1 0\n"
    << "  L -1 0\n"
    << "end\n"
    << "body\n"
    << "  nx = x + dx * m\n"
    << "  ny = y + dy * m\n"
    << "  if nx < 0\n"
    << "    nx = 0\n"
    << "  end\n"
    << "  if nx > w\n"
    << "    nx = w\n"
    << "  end\n"
    << "  if ny < 0\n"
    << "    ny = 0\n"
    << "  end\n"
    << "  if ny > w\n"
    << "    ny = w\n"
    << "  end\n"
    << "  # the food strip spans the bottom; cheese sits left of the trap\n"
    << "  r = -1\n"
    << "  d = 0\n"
    << "  if ny <= food_y\n"
    << "    if nx >= goal_x\n"
    << "      if nx >= trap_x\n"
    << "        r = -1000\n"
    << "        d = 1\n"
    << "      else\n"
    << "        r = 0\n"
    << "        d = 1\n"
    << "      end\n"
    << "    end\n"
    << "  end\n"
    << "end\n"
    << "next nx ny\n"
    << "reward r\n"
    << "done d\n"
    << "success 0\n";
  return o.str();
}

std::string simple_maze_source(long s) {
  std::ostringstream o;
  o << "env simple_maze\n"
    << "state x in [0, " << sc(9, s) << "] discrete\n"
    << "state y in [0, " << sc(9, s) << "] discrete\n"
    << "param b = " << sc(9, s) << "\n"
    << "param m = " << sc(1, s) << "\n"
    << "param wall_x = " << sc(2, s) << "\n"
    << "param gap_y = " << sc(8, s) << "\n"
    << "param goal = " << sc(9, s) << "\n"
    << "actions dx dy\n"
    << "  U 0 1\n"
    << "  D 0 -1\n"
    << "  R 1 0\n"
    << "  L -1 0\n"
    << "end\n"
    << "body\n"
    << "  nx = x + dx * m\n"
    << "  ny = y + dy * m\n"
    << "  if nx < 0\n"
    << "    nx = 0\n"
    << "  end\n"
    << "  if nx > b\n"
    << "    nx = b\n"
    << "  end\n"
    << "  if ny < 0\n"
    << "    ny = 0\n"
    << "  end\n"
    << "  if ny > b\n"
    << "    ny = b\n"
    << "  end\n"
    << "  # a wall fills column wall_x except the top row; bumping it bounces\n"
    << "  if nx == wall_x\n"
    << "    if ny <= gap_y\n"
    << "      nx = x\n"
    << "      ny = y\n"
    << "    end\n"
    << "  end\n"
    << "  r = -1\n"
    << "  d = 0\n"
    << "  if nx >= goal\n"
    << "    if ny >= goal\n"
    << "      r = 0\n"
    << "      d = 1\n"
    << "    end\n"
    << "  end\n"
    << "end\n"
    << "next nx ny\n"
    << "reward r\n"
    << "done d\n"
    << "success 0\n";
  return o.str();
}

std::string wumpus_source(long s) {
  std::ostringstream o;
  o << "env wumpus\n"
    << "state x in [0, " << sc(5, s) << "] discrete\n"
    << "state y in [0, " << sc(5, s) << "] discrete\n"
    << "param b = " << sc(5, s) << "\n"
    << "param m = " << sc(1, s) << "\n"
    << "param pit_x0 = " << sc(2, s) << "\n"
    << "param pit_x1 = " << sc(3, s) << "\n"
    << "param pit_y = " << sc(2, s) << "\n"
    << "param wump_x = " << sc(4, s) << "\n"
    << "param wump_y = " << sc(1, s) << "\n"
    << "param gold = " << sc(5, s) << "\n"
    << "actions dx dy\n"
    << "  U 0 1\n"
    << "  D 0 -1\n"
    << "  R 1 0\n"
    << "  L -1 0\n"
    << "end\n"
    << "body\n"
    << "  nx = x + dx * m\n"
    << "  ny = y + dy * m\n"
    << "  if nx < 0\n"
    << "    nx = 0\n"
    << "  end\n"
    << "  if nx > b\n"
    << "    nx = b\n"
    << "  end\n"
    << "  if ny < 0\n"
    << "    ny = 0\n"
    << "  end\n"
    << "  if ny > b\n"
    << "    ny = b\n"
    << "  end\n"
    << "  r = -1\n"
    << "  d = 0\n"
    << "  if nx >= pit_x0\n"
    << "    if nx <= pit_x1\n"
    << "      if ny == pit_y\n"
    << "        r = -1000\n"
    << "        d = 1\n"
    << "      end\n"
    << "    end\n"
    << "  end\n"
    << "  if nx == wump_x\n"
    << "    if ny == wump_y\n"
    << "      r = -1000\n"
    << "      d = 1\n"
    << "    end\n"
    << "  end\n"
    << "  if nx >= gold\n"
    << "    if ny >= gold\n"
    << "      r = 0\n"
    << "      d = 1\n"
    << "    end\n"
    << "  end\n"
    << "end\n"
    << "next nx ny\n"
    << "reward r\n"
    << "done d\n"
    << "success 0\n";
  return o.str();
}

std::string braking_car_source(long s) {
  std::ostringstream o;
  o << "env braking_car\n"
    << "state dist in [0, " << sc(200, s) << "]\n"
    << "state v in [0, " << sc(50, s) << "]\n"
    << "param bmax = " << sc(5, s) << "\n"
    << "actions p\n"
    << "  light 1/5\n"
    << "  med 1/2\n"
    << "  full 1\n"
    << "end\n"
    << "body\n"
    << "  nv = v - p * bmax\n"
    << "  if nv < 0\n"
    << "    nv = 0\n"
    << "  end\n"
    << "  nd = dist - nv\n"
    << "  if nd < 0\n"
    << "    nd = 0\n"
    << "  end\n"
    << "  # stopping-distance frontier; splits states by braking destiny\n"
    << "  hot = 0\n"
    << "  if v * v > 2 * bmax * dist\n"
    << "    hot = 1\n"
    << "  end\n"
    << "  r = 0 - p\n"
    << "  d = 0\n"
    << "  if nd <= 0\n"
    << "    if nv > 0\n"
    << "      r = -1000\n"
    << "      d = 1\n"
    << "    end\n"
    << "  end\n"
    << "  if nv <= 0\n"
    << "    d = 1\n"
    << "  end\n"
    << "end\n"
    << "next nd nv\n"
    << "reward r\n"
    << "done d\n"
    << "success -10\n";
  return o.str();
}

std::string mountain_car_source() {
  std::ostringstream o;
  o << "env mountain_car\n"
    << "state pos in [-6/5, 3/5]\n"
    << "state vel in [-7/100, 7/100]\n"
    << "param force = 1/1000\n"
    << "param grav = 1/400\n"
    << "param goal = 1/2\n"
    << "actions acc\n"
    << "  rev -1\n"
    << "  zero 0\n"
    << "  fwd 1\n"
    << "end\n"
    << "body\n"
    << "  nv = vel + acc * force - grav * cos(3 * pos)\n"
    << "  if nv < -7/100\n"
    << "    nv = -7/100\n"
    << "  end\n"
    << "  if nv > 7/100\n"
    << "    nv = 7/100\n"
    << "  end\n"
    << "  np = pos + nv\n"
    << "  if np < -6/5\n"
    << "    np = -6/5\n"
    << "    nv = 0\n"
    << "  end\n"
    << "  if np > 3/5\n"
    << "    np = 3/5\n"
    << "  end\n"
    << "  r = -1\n"
    << "  d = 0\n"
    << "  if np >= goal\n"
    << "    r = 0\n"
    << "    d = 1\n"
    << "  end\n"
    << "end\n"
    << "next np nv\n"
    << "reward r\n"
    << "done d\n"
    << "success 0\n";
  return o.str();
}

std::string random_walk_source(long s) {
  std::ostringstream o;
  o << "env random_walk\n"
    << "state x in [0, " << sc(10, s) << "]\n"
    << "param m = " << sc(2, s) << "\n"
    << "param w = " << sc(10, s) << "\n"
    << "param goal = " << sc(9, s) << "\n"
    << "param hole_lo = " << sc(1, s) << "\n"
    << "param hole_hi = " << sc(2, s) << "\n"
    << "actions dir\n"
    << "  right 1\n"
    << "  left -1\n"
    << "end\n"
    << "body\n"
    << "  u ~ uniform(" << sc(Rational(-1, 5), s) << ", "
    << sc(Rational(1, 5), s) << ")\n"
    << "  nx = x + dir * m + u\n"
    << "  if nx < 0\n"
    << "    nx = 0\n"
    << "  end\n"
    << "  if nx > w\n"
    << "    nx = w\n"
    << "  end\n"
    << "  r = -1\n"
    << "  d = 0\n"
    << "  if nx >= goal\n"
    << "    r = 0\n"
    << "    d = 1\n"
    << "  end\n"
    << "  if nx >= hole_lo\n"
    << "    if nx <= hole_hi\n"
    << "      r = -100\n"
    << "      d = 1\n"
    << "    end\n"
    << "  end\n"
    << "end\n"
    << "next nx\n"
    << "reward r\n"
    << "done d\n"
    << "success 0\n";
  return o.str();
}

std::string synthetic_one_action_source(long s) {
  std::ostringstream o;
  o << "env synthetic_one_action\n"
    << "state x in [0, " << sc(10, s) << "]\n"
    << "param mid = " << sc(5, s) << "\n"
    << "actions a\n"
    << "  only 0\n"
    << "end\n"
    << "body\n"
    << "  r = 1\n"
    << "  d = 1\n"
    << "  if x < mid\n"
    << "    r = 0\n"
    << "  end\n"
    << "end\n"
    << "next x\n"
    << "reward r\n"
    << "done d\n"
    << "success 1\n";
  return o.str();
}

std::vector<BenchmarkEntry> make_entries() {
  std::vector<BenchmarkEntry> v;
  v.push_back({"navigation", "benchmarks/envs/navigation.env", 12, Rational(0),
               "continuous room, four unit moves, cheese strip next to a trap",
               true});
  v.push_back({"simple_maze", "benchmarks/envs/simple_maze.env", 12,
               Rational(0),
               "integer grid, walled column with a gap at the top row", true});
  v.push_back({"braking_car", "benchmarks/envs/braking_car.env", 8,
               Rational(-10),
               "stop before the obstacle; braking strength is the step cost",
               true});
  v.push_back({"mountain_car", "benchmarks/envs/mountain_car.env", 6,
               Rational(0), "underpowered car on a cosine slope; fixed scale",
               false});
  v.push_back({"random_walk", "benchmarks/envs/random_walk.env", 6,
               Rational(0), "noisy 1D walk between a hole and the goal",
               true});
  v.push_back({"wumpus", "benchmarks/envs/wumpus.env", 12, Rational(0),
               "integer grid with a pit row segment, a wumpus, and gold",
               true});
  v.push_back({"synthetic_one_action", "benchmarks/envs/synthetic_one_action.env",
               2, Rational(1),
               "single action, single branch; partitions still split", true});
  return v;
}

}  // namespace

const std::vector<BenchmarkEntry>& list_benchmarks() {
  static const std::vector<BenchmarkEntry> entries = make_entries();
  return entries;
}

std::string benchmark_source(const std::string& name, long scale) {
  if (scale < 1) throw ValidationError("benchmark scale must be at least 1");
  const BenchmarkEntry* entry = nullptr;
  for (const BenchmarkEntry& e : list_benchmarks())
    if (e.name == name) entry = &e;
  if (!entry) throw ValidationError("unknown benchmark '" + name + "'");
  if (!entry->scalable && scale != 1)
    throw ValidationError("benchmark '" + name + "' has a fixed scale");
  if (name == "navigation") return navigation_source(scale);
  if (name == "simple_maze") return simple_maze_source(scale);
  if (name == "wumpus") return wumpus_source(scale);
  if (name == "braking_car") return braking_car_source(scale);
  if (name == "mountain_car") return mountain_car_source();
  if (name == "random_walk") return random_walk_source(scale);
  if (name == "synthetic_one_action")
    return synthetic_one_action_source(scale);
  throw InvariantViolation("registry entry without a source generator");
}

std::pair<Program, BenchmarkEntry> load_benchmark(const std::string& name,
                                                  long scale) {
  std::string text = benchmark_source(name, scale);
  for (const BenchmarkEntry& e : list_benchmarks()) {
    if (e.name == name) return {parse_program(text), e};
  }
  throw InvariantViolation("unreachable: benchmark_source accepted the name");
}

}  // namespace sympar
