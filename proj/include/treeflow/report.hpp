#pragma once

#include <string>
#include <vector>

namespace treeflow {

/// One verified (or failed) identity, with the first witness on failure.
struct IdentityCheck {
    std::string name;
    bool ok = false;
    std::string witness;
};

}  // namespace treeflow
