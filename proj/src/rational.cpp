#include "shintani/rational.hpp"

#include <cctype>

#include "shintani/errors.hpp"

namespace shintani {

std::string rat_to_string(const Rat& x) {
  Rat c = x;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw ValidationError("empty rational literal");
  // Validate by hand; mpq's own parser accepts whitespace and bases we do
  // not want in config files.
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  std::string num = s, den = "1";
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!is_int(num) || !is_int(den))
    throw ValidationError("bad rational literal: \"" + s + "\"");
  Rat r(num + "/" + den);
  if (r.get_den() == 0)
    throw ValidationError("zero denominator in rational literal: \"" + s + "\"");
  r.canonicalize();
  return r;
}

Int rat_height(const Rat& x) {
  Int n = abs(x.get_num());
  Int d = abs(x.get_den());
  return n > d ? n : d;
}

}  // namespace shintani
