from webspell.cli import main

raise SystemExit(main())
