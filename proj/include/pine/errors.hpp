#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pine {

// A theorem hypothesis or operation precondition does not hold.
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// A bounded search ran out of its node budget before reaching an answer.
struct budget_exhausted_error : std::runtime_error {
    explicit budget_exhausted_error(const std::string& what) : std::runtime_error(what) {}
};

// Node-expansion budget shared by the exact searches. Counts, never times.
class Budget {
public:
    Budget() = default;
    explicit Budget(uint64_t limit) : limit_(limit) {}

    void tick(const char* where) {
        if (++used_ > limit_) throw budget_exhausted_error(std::string("budget exhausted in ") + where);
    }

    uint64_t used() const { return used_; }
    uint64_t limit() const { return limit_; }

private:
    uint64_t limit_ = 1ULL << 34;
    uint64_t used_ = 0;
};

}  // namespace pine
