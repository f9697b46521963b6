#include "sft/rational.hpp"

#include "sft/error.hpp"

namespace sft {

Rational parse_rational(const std::string& text) {
  using boost::multiprecision::cpp_int;
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(cpp_int(text));
    cpp_int den(text.substr(slash + 1));
    if (den == 0) throw ValidationError("rational with zero denominator: '" + text + "'");
    return Rational(cpp_int(text.substr(0, slash)), den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const ValidationError*>(&e)) throw;
    throw ValidationError("cannot parse rational '" + text + "'");
  }
}

std::string to_string(const Rational& q) { return q.str(); }

}  // namespace sft
