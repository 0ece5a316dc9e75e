#pragma once

// Umbrella header.

#include "schaper/bigint.hpp"
#include "schaper/classifiers.hpp"
#include "schaper/colouring.hpp"
#include "schaper/decomp_io.hpp"
#include "schaper/errors.hpp"
#include "schaper/gram.hpp"
#include "schaper/partition.hpp"
#include "schaper/polytabloid.hpp"
#include "schaper/sum_formula.hpp"
#include "schaper/tableau.hpp"
#include "schaper/verify.hpp"
