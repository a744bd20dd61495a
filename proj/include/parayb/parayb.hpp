#pragma once

#include "braces.hpp"
#include "carrier.hpp"
#include "coalgebra.hpp"
#include "shelves.hpp"
#include "solutions.hpp"
#include "tensor.hpp"
