#include "pstray/error.hpp"

namespace pstray {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Input: return "input";
    case ErrorKind::Classification: return "classification";
    case ErrorKind::Rank: return "rank";
    case ErrorKind::Query: return "query";
    case ErrorKind::Construction: return "construction";
    case ErrorKind::Load: return "load";
    case ErrorKind::Version: return "version";
    case ErrorKind::OracleCapacity: return "oracle capacity";
  }
  return "unknown";
}

}  // namespace pstray
