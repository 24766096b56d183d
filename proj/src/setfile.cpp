#include "pfrkit/setfile.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "pfrkit/error.hpp"

namespace pfrkit {

F2Set parse_set_text(std::string_view text) {
  std::optional<int> dim;
  std::vector<std::uint64_t> elements;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (!dim) {
      if (line.substr(0, 2) != "n=") throw ParseError(line_no, "expected header 'n=<dim>'");
      int value = 0;
      const std::string_view digits = line.substr(2);
      if (digits.empty() || digits.size() > 2) throw ParseError(line_no, "bad dimension");
      for (char c : digits) {
        if (c < '0' || c > '9') throw ParseError(line_no, "bad dimension");
        value = value * 10 + (c - '0');
      }
      if (value < 1 || value > kMaxDim) {
        throw ParseError(line_no, "dimension must be in [1, 64]");
      }
      dim = value;
    } else {
      if (line.size() != static_cast<std::size_t>(*dim)) {
        throw ParseError(line_no, "expected " + std::to_string(*dim) +
                                      " binary digits, got '" + std::string(line) + "'");
      }
      std::uint64_t bits = 0;
      for (char c : line) {
        if (c != '0' && c != '1') {
          throw ParseError(line_no, "non-binary character in '" + std::string(line) + "'");
        }
        bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
      }
      if (!elements.empty() && bits <= elements.back()) {
        throw ParseError(line_no, "elements must be strictly ascending");
      }
      elements.push_back(bits);
    }
    if (end == text.size()) break;
  }
  if (!dim) throw ParseError(line_no, "missing header 'n=<dim>'");
  return F2Set(*dim, std::move(elements));
}

std::string format_set_text(const F2Set& a) {
  std::string out = "n=" + std::to_string(a.dim()) + "\n";
  out.reserve(out.size() + a.size() * (static_cast<std::size_t>(a.dim()) + 1));
  for (std::uint64_t e : a) {
    out += to_binary(e, a.dim());
    out += '\n';
  }
  return out;
}

F2Set read_set_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open set file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_set_text(buffer.str());
}

void write_set_file(const std::filesystem::path& path, const F2Set& a) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write set file '" + path.string() + "'");
  out << format_set_text(a);
}

}  // namespace pfrkit
