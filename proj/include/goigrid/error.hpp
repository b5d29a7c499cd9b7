#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace goigrid {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what, std::string kind = "error")
        : std::runtime_error(what), kind_(std::move(kind)) {}

    /// Machine-readable category, e.g. "invalid_input" or "stage_mismatch".
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Input rejected; carries the offending record index or line when known.
class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what,
                          std::optional<std::size_t> index = std::nullopt)
        : Error(what, "invalid_input"), index_(index) {}

    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    std::optional<std::size_t> index_;
};

/// An artifact was produced from different upstream data than the one supplied.
class StageMismatch : public Error {
public:
    explicit StageMismatch(const std::string& what, std::string expected = {}, std::string actual = {})
        : Error(what, "stage_mismatch"), expected_(std::move(expected)), actual_(std::move(actual)) {}

    const std::string& expected() const noexcept { return expected_; }
    const std::string& actual() const noexcept { return actual_; }

private:
    std::string expected_;
    std::string actual_;
};

} // namespace goigrid
