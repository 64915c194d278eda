#pragma once

#include "compositions.hpp"
#include "count.hpp"
#include "errors.hpp"
#include "intersections.hpp"
#include "oracle.hpp"
#include "params.hpp"
#include "qkit.hpp"
#include "volumes.hpp"
