#pragma once

#include <string>
#include <string_view>

namespace ncwick::fault {

// Named fault-injection switch used by `verify --mutate NAME` to prove the
// identity suites can localize a broken module. Off unless set explicitly;
// set once at process start, before any cache fills.
inline std::string& active_name() {
    static std::string name;
    return name;
}

inline void set(std::string name) { active_name() = std::move(name); }

inline bool active(std::string_view name) { return active_name() == name; }

}  // namespace ncwick::fault
