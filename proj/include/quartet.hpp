#pragma once

#include "quartet/scalar.hpp"
#include "quartet/state.hpp"
#include "quartet/geometry.hpp"
#include "quartet/invariants.hpp"
#include "quartet/hyperdet.hpp"
#include "quartet/roots.hpp"
#include "quartet/canonical.hpp"
#include "quartet/identities.hpp"
#include "quartet/io.hpp"
#include "quartet/cli.hpp"
