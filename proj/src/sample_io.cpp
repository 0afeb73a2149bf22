#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "circw/circular.hpp"
#include "circw/error.hpp"

namespace circw {

CircularSample read_sample(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || errno == ERANGE)
      throw InvalidArgument("line " + std::to_string(lineno) +
                            ": not a number: '" + token + "'");
    values.push_back(v);
  }
  return CircularSample::from(values);
}

CircularSample read_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sample file: " + path);
  return read_sample(in);
}

void write_sample(std::ostream& out, const CircularSample& s) {
  char buf[32];
  for (double v : s.angles()) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << '\n';
  }
}

void write_sample_file(const std::string& path, const CircularSample& s) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write sample file: " + path);
  write_sample(out, s);
}

}  // namespace circw
