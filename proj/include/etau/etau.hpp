// Everything at once.
#pragma once

#include "chains.hpp"
#include "critical.hpp"
#include "eliminate.hpp"
#include "judgment.hpp"
#include "names.hpp"
#include "ops.hpp"
#include "prop.hpp"
#include "prover.hpp"
#include "sat.hpp"
#include "schemas.hpp"
#include "syntax.hpp"
#include "text.hpp"
#include "translate.hpp"
