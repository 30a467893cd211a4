#include "vmp/errors.hpp"

namespace vmp {

ChainMismatchError::ChainMismatchError(std::string poly, const std::string& detail)
    : Error("chain mismatch in " + poly + ": " + detail), poly_(std::move(poly)) {}

}  // namespace vmp
