#ifndef RLS_IO_HPP
#define RLS_IO_HPP

#include <iosfwd>
#include <string>

#include "rls/core.hpp"

// Text formats:
//   .perm  line 1 "width <n>", then the 2^n outputs as decimals, '#' comments
//   .tofn  line 1 "lines a,b,c,...", then one gate per line, e.g. TOF(a,c;b)
//   cost table: lines "<controls> <cost> [<cost_with_extra_line>]"

namespace rls {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int ln, const std::string& msg)
      : std::runtime_error("line " + std::to_string(ln) + ": " + msg),
        line(ln) {}
};

ReversibleFunction parse_function(std::istream& in, int width_cap = kMaxWidth);
ReversibleFunction parse_function_file(const std::string& path,
                                       int width_cap = kMaxWidth);
std::string format_function(const ReversibleFunction& f);

ToffoliGate parse_gate(const std::string& text, int width, int line_no = 0);
std::string format_gate(const ToffoliGate& g);

Network parse_network(std::istream& in);
Network parse_network_file(const std::string& path);
std::string format_network(const Network& net);
void write_network_file(const std::string& path, const Network& net);

CostModel parse_cost_table(std::istream& in);
CostModel parse_cost_table_file(const std::string& path);
std::string format_cost_table(const CostModel& model);

}  // namespace rls

#endif
