#ifndef DIOPH_JSON_HPP
#define DIOPH_JSON_HPP

#include <json.hpp>

namespace dioph {
// Key order is preserved so that identical inputs produce byte-identical
// report files.
using Json = nlohmann::ordered_json;
}  // namespace dioph

#endif
