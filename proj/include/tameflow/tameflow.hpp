#ifndef TAMEFLOW_TAMEFLOW_HPP
#define TAMEFLOW_TAMEFLOW_HPP

#include "tameflow/asymptotics.hpp"
#include "tameflow/complex.hpp"
#include "tameflow/conley.hpp"
#include "tameflow/contractibility.hpp"
#include "tameflow/errors.hpp"
#include "tameflow/flow.hpp"
#include "tameflow/gap.hpp"
#include "tameflow/homology.hpp"
#include "tameflow/orientation.hpp"
#include "tameflow/polynomial.hpp"
#include "tameflow/poset.hpp"
#include "tameflow/posetmorse.hpp"
#include "tameflow/random.hpp"

#endif
