#pragma once

#include "blade.hpp"
#include "calculus.hpp"
#include "curve.hpp"
#include "dsl.hpp"
#include "dual.hpp"
#include "multivector.hpp"
#include "scalar_fn.hpp"
