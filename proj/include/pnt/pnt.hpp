#pragma once

#include "pnt/atoms.hpp"
#include "pnt/term.hpp"
#include "pnt/substitution.hpp"
#include "pnt/support.hpp"
#include "pnt/unify.hpp"
#include "pnt/nominal.hpp"
#include "pnt/lambda.hpp"
#include "pnt/text.hpp"
