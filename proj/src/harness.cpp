#include "lcbc/grid.hpp"

// Placeholder translation unit; real implementation lands with its module.
