#include "pripel/errors.hpp"

namespace pripel {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

EmptyDistributions::EmptyDistributions()
    : Error("no inter-event durations available to resample (every trace has a single event)") {}

UnknownCategory::UnknownCategory(const std::string& attribute, const std::string& value)
    : Error("value '" + value + "' is not in the category set of attribute '" + attribute + "'") {}

NoValues::NoValues(const std::string& attribute)
    : Error("attribute '" + attribute + "' has no values in the log") {}

}  // namespace pripel
