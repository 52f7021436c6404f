#pragma once

#include "cubefree/claims.hpp"
#include "cubefree/construction.hpp"
#include "cubefree/counting.hpp"
#include "cubefree/detection.hpp"
#include "cubefree/enumerate.hpp"
#include "cubefree/errors.hpp"
#include "cubefree/group.hpp"
#include "cubefree/models.hpp"
#include "cubefree/oracle.hpp"
#include "cubefree/search.hpp"
#include "cubefree/sumset.hpp"
