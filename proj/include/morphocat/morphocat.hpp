#pragma once

#include "morphocat/category.hpp"
#include "morphocat/combinators.hpp"
#include "morphocat/error.hpp"
#include "morphocat/feature_structure.hpp"
#include "morphocat/lambda.hpp"
#include "morphocat/lexicon.hpp"
#include "morphocat/morphophonology.hpp"
#include "morphocat/operator.hpp"
#include "morphocat/parser.hpp"
#include "morphocat/render.hpp"
#include "morphocat/segment.hpp"
#include "morphocat/utf8.hpp"
