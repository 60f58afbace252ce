#include "linfeat/errors.hpp"

namespace linfeat {

int cli_exit_code(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const ParseError*>(&e)) return 3;
    if (dynamic_cast<const ValidationError*>(&e)) return 3;
    if (dynamic_cast<const IoError*>(&e)) return 3;
    if (dynamic_cast<const NumericError*>(&e)) return 4;
    if (dynamic_cast<const EvaluationError*>(&e)) return 4;
    if (dynamic_cast<const ArgumentError*>(&e)) return 2;
    return 1;
}

}  // namespace linfeat
