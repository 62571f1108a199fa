#ifndef CONLAT_ERRORS_HPP
#define CONLAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace conlat {

// Input failed structural validation (bad table, unknown label, ...).
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// A documented precondition of an operation does not hold.
struct precondition_error : std::runtime_error {
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// A size guard was exceeded; raise the guard to proceed.
struct guard_error : std::runtime_error {
  explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace conlat

#endif  // CONLAT_ERRORS_HPP
