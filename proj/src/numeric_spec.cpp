#include "ighit/numeric_spec.hpp"

#include <cstdlib>

#include "ighit/errors.hpp"

namespace ighit {

std::string_view to_string(IltMethod method) {
  switch (method) {
    case IltMethod::gaver_stehfest:
      return "gaver_stehfest";
    case IltMethod::fixed_talbot:
      return "fixed_talbot";
  }
  return "unknown";
}

IltMethod ilt_method_from_string(std::string_view name) {
  if (name == "gaver_stehfest" || name == "gaver-stehfest") return IltMethod::gaver_stehfest;
  if (name == "fixed_talbot" || name == "fixed-talbot" || name == "talbot") return IltMethod::fixed_talbot;
  throw DomainError("unknown inversion method '" + std::string(name) + "'");
}

void NumericSpec::validate() const {
  if (!(abs_tol > 0)) throw DomainError("abs_tol must be > 0");
  if (!(rel_tol > 0)) throw DomainError("rel_tol must be > 0");
  if (!(truncation_eps > 0)) throw DomainError("truncation_eps must be > 0");
  if (!(ilt_tol > 0)) throw DomainError("ilt_tol must be > 0");
  if (max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
  if (ilt_method == IltMethod::gaver_stehfest) {
    if (ilt_terms < 8 || ilt_terms % 2 != 0)
      throw DomainError("gaver_stehfest needs an even ilt_terms >= 8");
  } else if (ilt_terms < 16) {
    throw DomainError("fixed_talbot needs ilt_terms >= 16");
  }
}

NumericSpec NumericSpec::strict() {
  NumericSpec spec;
  spec.abs_tol = 1e-15;
  spec.rel_tol = 1e-13;
  spec.truncation_eps = 1e-16;
  spec.max_subdivisions = 20000;
  return spec;
}

NumericSpec NumericSpec::fast() {
  NumericSpec spec;
  spec.abs_tol = 1e-8;
  spec.rel_tol = 1e-6;
  spec.truncation_eps = 1e-12;
  return spec;
}

NumericSpec NumericSpec::from_profile(std::string_view name) {
  if (name.empty() || name == "default") return NumericSpec{};
  if (name == "strict") return strict();
  if (name == "fast") return fast();
  throw DomainError("unknown numeric profile '" + std::string(name) + "'");
}

NumericSpec NumericSpec::from_environment() {
  const char* profile = std::getenv("IGHIT_NUMERIC_PROFILE");
  return from_profile(profile == nullptr ? std::string_view{} : std::string_view{profile});
}

}  // namespace ighit
