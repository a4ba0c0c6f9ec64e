#pragma once

#include "roughsig/controlled.hpp"
#include "roughsig/errors.hpp"
#include "roughsig/forest.hpp"
#include "roughsig/gen.hpp"
#include "roughsig/hopf.hpp"
#include "roughsig/io.hpp"
#include "roughsig/lyndon.hpp"
#include "roughsig/path.hpp"
#include "roughsig/pvar.hpp"
#include "roughsig/rde.hpp"
#include "roughsig/rough_path.hpp"
#include "roughsig/sewing.hpp"
#include "roughsig/shuffle.hpp"
#include "roughsig/signature.hpp"
#include "roughsig/tensor.hpp"
#include "roughsig/vector_field.hpp"
#include "roughsig/words.hpp"
