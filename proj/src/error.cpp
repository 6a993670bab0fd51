#include "robin/error.hpp"

namespace robin {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::invalid_coefficient: return "invalid-coefficient";
    case ErrorKind::degenerate_mesh: return "degenerate-mesh";
    case ErrorKind::singular_system: return "singular-system";
    case ErrorKind::numeric_breakdown: return "numeric-breakdown";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::unsupported_dimension: return "unsupported-dimension";
    case ErrorKind::no_informative_pairs: return "no-informative-pairs";
    }
    return "unknown";
}

} // namespace robin
