#include "thermodwell/errors.hpp"

#include <iostream>
#include <utility>

namespace thermodwell {

namespace {

void stderr_sink(std::string_view message) {
    std::cerr << "warning: " << message << '\n';
}

thread_local WarningSink current_sink = stderr_sink;

}  // namespace

void warn(std::string_view message) {
    if (current_sink) current_sink(message);
}

ScopedWarningSink::ScopedWarningSink(WarningSink sink)
    : previous_(std::exchange(current_sink, std::move(sink))) {}

ScopedWarningSink::~ScopedWarningSink() {
    current_sink = std::move(previous_);
}

}  // namespace thermodwell
