#include "wedge/gas.hpp"

// All gas-model operations are header-inline; this unit anchors the module.
namespace wedge::gas {}
