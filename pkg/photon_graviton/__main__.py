import sys

from photon_graviton.cli.main import main

sys.exit(main())
