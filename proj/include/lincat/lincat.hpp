#pragma once

#include "lincat/bimodule.hpp"
#include "lincat/catalog.hpp"
#include "lincat/category.hpp"
#include "lincat/constructions.hpp"
#include "lincat/dual.hpp"
#include "lincat/equivalence.hpp"
#include "lincat/error.hpp"
#include "lincat/functor.hpp"
#include "lincat/hochschild.hpp"
#include "lincat/karoubi.hpp"
#include "lincat/lifting.hpp"
#include "lincat/linalg.hpp"
#include "lincat/matrix.hpp"
#include "lincat/moduli.hpp"
#include "lincat/module_cohomology.hpp"
#include "lincat/scalar.hpp"
