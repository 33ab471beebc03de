#pragma once

#include <stdexcept>
#include <string>

namespace claimpipe {

/// Malformed or inconsistent input data.
class DataError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Bad configuration (missing key, unknown language, invalid parameter).
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Endpoint unreachable or request exhausted its retries.
class NetworkError : public std::runtime_error {
   public:
    NetworkError(const std::string& what, int last_status = 0)
        : std::runtime_error(what), last_status_(last_status) {}
    int last_status() const { return last_status_; }

   private:
    int last_status_;
};

}  // namespace claimpipe
