#ifndef DIOPH_ERROR_HPP
#define DIOPH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dioph {

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedDegree : std::runtime_error {
  explicit UnsupportedDegree(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised only on internal inconsistencies (a certificate that fails to
// re-verify, an exactness assumption that does not hold). Never used for
// enclosures that are merely too wide; those surface as Undecided statuses.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace dioph

#endif
