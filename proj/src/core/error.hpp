#ifndef QVIB_CORE_ERROR_HPP
#define QVIB_CORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qvib {

enum class Status {
  ok = 0,
  argument,     // bad call arguments (preconditions)
  domain,       // mathematically invalid input (sin(tau)=0, negative bracket, ...)
  config,       // malformed or inconsistent configuration document
  data,         // malformed input data (level files)
  resource,     // resource guard tripped (basis dimension cap)
  structure,    // a structural assertion failed (off-block leakage, asymmetry)
  convergence,  // iterative procedure did not converge
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(Status status, const std::string& message)
      : std::runtime_error(message), status_(status) {}
  Status status() const noexcept { return status_; }

 private:
  Status status_;
};

[[noreturn]] inline void throw_argument(const std::string& m) { throw Error(Status::argument, m); }
[[noreturn]] inline void throw_domain(const std::string& m) { throw Error(Status::domain, m); }
[[noreturn]] inline void throw_config(const std::string& m) { throw Error(Status::config, m); }
[[noreturn]] inline void throw_data(const std::string& m) { throw Error(Status::data, m); }
[[noreturn]] inline void throw_resource(const std::string& m) { throw Error(Status::resource, m); }
[[noreturn]] inline void throw_structure(const std::string& m) { throw Error(Status::structure, m); }

}  // namespace qvib

#endif
