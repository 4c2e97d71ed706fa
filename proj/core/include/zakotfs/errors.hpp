#pragma once

#include <stdexcept>
#include <string>

namespace zakotfs {

// Invalid frame geometry (bad spacing, divisibility, overlap).
class layout_error : public std::invalid_argument {
public:
    explicit layout_error(const std::string& what) : std::invalid_argument(what) {}
};

// Channel estimation failure; carries the offending tap location.
class estimation_error : public std::runtime_error {
public:
    estimation_error(const std::string& what, int k, int l)
        : std::runtime_error(what), k_(k), l_(l) {}
    int tap_k() const { return k_; }
    int tap_l() const { return l_; }

private:
    int k_;
    int l_;
};

// Symbol detection failure (singular normal matrix etc.).
class detection_error : public std::runtime_error {
public:
    explicit detection_error(const std::string& what) : std::runtime_error(what) {}
};

// Bad experiment configuration.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace zakotfs
