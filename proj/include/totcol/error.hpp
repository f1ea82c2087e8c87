#pragma once

#include <stdexcept>
#include <string>

namespace totcol {

// A named precondition violation. `name()` identifies the violated clause so
// callers (and the CLI report) can surface which hypothesis failed.
class PreconditionError : public std::runtime_error {
public:
    PreconditionError(std::string name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

// A construction step exhausted its retry budget or hit an internal
// contradiction. Never silently wrong: every such failure is diagnosable.
class ConstructionError : public std::runtime_error {
public:
    ConstructionError(std::string stage, const std::string& detail)
        : std::runtime_error(stage + ": " + detail), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

#define TOTCOL_REQUIRE(cond, name, detail)                      \
    do {                                                        \
        if (!(cond)) throw ::totcol::PreconditionError(name, detail); \
    } while (0)

// Always-on internal invariant check (independent of NDEBUG).
#define TOTCOL_CHECK(cond, stage, detail)                          \
    do {                                                           \
        if (!(cond)) throw ::totcol::ConstructionError(stage, detail); \
    } while (0)

} // namespace totcol
