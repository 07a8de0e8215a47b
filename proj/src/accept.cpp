#include "edslab/eds.hpp"
