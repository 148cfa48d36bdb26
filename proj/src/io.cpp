#include "rls/io.hpp"

#include <fstream>
#include <sstream>

namespace rls {

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

}  // namespace

ReversibleFunction parse_function(std::istream& in, int width_cap) {
  std::string line;
  int line_no = 0;
  int width = -1;
  std::vector<Pattern> table;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(strip_comment(line));
    if (width < 0) {
      std::string kw;
      if (!(ss >> kw)) continue;
      if (kw != "width") throw ParseError(line_no, "expected 'width <n>'");
      if (!(ss >> width) || width < 1)
        throw ParseError(line_no, "bad width value");
      if (width > width_cap)
        throw ParseError(line_no, "width " + std::to_string(width) +
                                      " exceeds cap " +
                                      std::to_string(width_cap));
      table.reserve(std::size_t{1} << width);
      std::string extra;
      if (ss >> extra) throw ParseError(line_no, "trailing text after width");
      continue;
    }
    long long v;
    while (ss >> v) {
      if (v < 0 || v >= (1LL << width))
        throw ParseError(line_no, "output value out of range");
      table.push_back(static_cast<Pattern>(v));
    }
    if (!ss.eof() && ss.fail()) {
      ss.clear();
      std::string junk;
      ss >> junk;
      if (!junk.empty()) throw ParseError(line_no, "not a number: " + junk);
    }
  }
  if (width < 0) throw ParseError(line_no, "missing 'width' header");
  if (table.size() != std::size_t{1} << width)
    throw ParseError(line_no, "expected " +
                                  std::to_string(std::size_t{1} << width) +
                                  " outputs, got " +
                                  std::to_string(table.size()));
  try {
    return ReversibleFunction(width, std::move(table));
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
}

ReversibleFunction parse_function_file(const std::string& path,
                                       int width_cap) {
  auto in = open_or_throw(path);
  return parse_function(in, width_cap);
}

std::string format_function(const ReversibleFunction& f) {
  std::ostringstream out;
  out << "width " << f.width << "\n";
  for (std::size_t i = 0; i < f.table.size(); ++i)
    out << f.table[i] << ((i + 1) % 16 == 0 || i + 1 == f.table.size() ? "\n" : " ");
  return out.str();
}

ToffoliGate parse_gate(const std::string& text, int width, int line_no) {
  std::string s = trim(text);
  if (s.substr(0, 4) != "TOF(" || s.back() != ')')
    throw ParseError(line_no, "expected TOF(...;...): " + s);
  std::string body = s.substr(4, s.size() - 5);
  auto semi = body.find(';');
  if (semi == std::string::npos)
    throw ParseError(line_no, "gate is missing ';' before target");
  std::string ctrl_part = trim(body.substr(0, semi));
  std::string tgt_part = trim(body.substr(semi + 1));
  int target = line_index_of_name(tgt_part);
  if (target < 0 || target >= width)
    throw ParseError(line_no, "bad target line: " + tgt_part);
  Pattern controls = 0;
  if (!ctrl_part.empty()) {
    for (const auto& tok : split(ctrl_part, ',')) {
      int idx = line_index_of_name(trim(tok));
      if (idx < 0 || idx >= width)
        throw ParseError(line_no, "bad control line: " + tok);
      controls |= Pattern{1} << idx;
    }
  }
  if (controls & (Pattern{1} << target))
    throw ParseError(line_no, "target repeated in control set");
  return ToffoliGate(controls, target);
}

std::string format_gate(const ToffoliGate& g) {
  std::string out = "TOF(";
  bool first = true;
  for (int i = 0; i < kMaxWidth; ++i) {
    if (g.controls & (Pattern{1} << i)) {
      if (!first) out += ",";
      out += line_name(i);
      first = false;
    }
  }
  out += ";" + line_name(g.target) + ")";
  return out;
}

Network parse_network(std::istream& in) {
  std::string line;
  int line_no = 0;
  int width = -1;
  Network net;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    if (width < 0) {
      if (s.substr(0, 6) != "lines ")
        throw ParseError(line_no, "expected 'lines a,b,...' header");
      auto names = split(trim(s.substr(6)), ',');
      width = static_cast<int>(names.size());
      if (width < 1 || width > kMaxWidth)
        throw ParseError(line_no, "bad line count");
      for (int i = 0; i < width; ++i)
        if (line_index_of_name(trim(names[i])) != i)
          throw ParseError(line_no, "lines must be named a,b,c,... in order");
      net.width = width;
      continue;
    }
    net.gates.push_back(parse_gate(s, width, line_no));
  }
  if (width < 0) throw ParseError(line_no, "missing 'lines' header");
  return net;
}

Network parse_network_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_network(in);
}

std::string format_network(const Network& net) {
  std::string out = "lines ";
  for (int i = 0; i < net.width; ++i)
    out += (i ? "," : "") + line_name(i);
  out += "\n";
  for (const auto& g : net.gates) out += format_gate(g) + "\n";
  return out;
}

void write_network_file(const std::string& path, const Network& net) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << format_network(net);
}

CostModel parse_cost_table(std::istream& in) {
  CostModel m;
  m.mode = CostModel::Mode::Quantum;
  m.quantum_table.assign(kMaxWidth + 1, -1);
  m.extra_line_table.assign(kMaxWidth + 1, -1);
  std::string line;
  int line_no = 0;
  int max_c = -1;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(strip_comment(line));
    int c;
    long long cost;
    if (!(ss >> c)) continue;
    if (!(ss >> cost) || c < 0 || c > kMaxWidth || cost < 0)
      throw ParseError(line_no, "expected '<controls> <cost> [<cost_extra>]'");
    long long extra = cost;
    ss >> extra;
    m.quantum_table[c] = cost;
    m.extra_line_table[c] = extra;
    max_c = std::max(max_c, c);
  }
  if (max_c < 0) throw ParseError(line_no, "empty cost table");
  m.quantum_table.resize(max_c + 1);
  m.extra_line_table.resize(max_c + 1);
  for (int c = 0; c <= max_c; ++c) {
    if (m.quantum_table[c] < 0)
      throw ParseError(line_no,
                       "no cost for " + std::to_string(c) + " controls");
    if (c > 0 && m.quantum_table[c] < m.quantum_table[c - 1])
      throw ParseError(line_no, "cost must be nondecreasing in control count");
  }
  return m;
}

CostModel parse_cost_table_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_cost_table(in);
}

std::string format_cost_table(const CostModel& model) {
  std::ostringstream out;
  for (std::size_t c = 0; c < model.quantum_table.size(); ++c) {
    out << c << " " << model.quantum_table[c];
    if (c < model.extra_line_table.size() &&
        model.extra_line_table[c] != model.quantum_table[c])
      out << " " << model.extra_line_table[c];
    out << "\n";
  }
  return out.str();
}

}  // namespace rls
