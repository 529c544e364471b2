from eventcluster.cli import main
import sys
sys.exit(main())
