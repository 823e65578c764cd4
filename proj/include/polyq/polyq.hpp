#pragma once

#include "polyq/convert.hpp"
#include "polyq/errors.hpp"
#include "polyq/farkas.hpp"
#include "polyq/integrality.hpp"
#include "polyq/io.hpp"
#include "polyq/limits.hpp"
#include "polyq/linalg.hpp"
#include "polyq/model.hpp"
#include "polyq/projection.hpp"
#include "polyq/rational.hpp"
#include "polyq/structure.hpp"
#include "polyq/unimodularity.hpp"
