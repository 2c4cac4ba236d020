#pragma once

#include <chrono>
#include <optional>

namespace scpr {

/// Optional wall-clock budget for a solver invocation.  A zero budget is a
/// deadline that has already passed, not "unlimited".
class Deadline {
public:
    Deadline() = default;

    static Deadline after(std::optional<std::chrono::milliseconds> budget) {
        Deadline d;
        if (budget) d.at_ = std::chrono::steady_clock::now() + *budget;
        return d;
    }

    static Deadline unlimited() { return Deadline{}; }

    bool expired() const {
        return at_ && std::chrono::steady_clock::now() >= *at_;
    }

private:
    std::optional<std::chrono::steady_clock::time_point> at_;
};

/// Stopwatch for Solution::wall_time.
class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    std::chrono::microseconds elapsed() const {
        return std::chrono::duration_cast<std::chrono::microseconds>(
            std::chrono::steady_clock::now() - start_);
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace scpr
