#pragma once

#include "hyperbent/boolfun.hpp"
#include "hyperbent/criteria.hpp"
#include "hyperbent/curves.hpp"
#include "hyperbent/families.hpp"
#include "hyperbent/field.hpp"
#include "hyperbent/io.hpp"
