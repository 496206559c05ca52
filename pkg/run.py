"""
sclab WSGI entry point.

    gunicorn run:app       served by the `api` image
    python run.py          local server on SC_LAB_PORT (default 5000)

The environment is chosen by SC_LAB_ENV (development, testing, production).
"""

import os

from sclab import create_app

app = create_app(os.getenv('SC_LAB_ENV', 'development'))

if __name__ == '__main__':
    settings = app.config['SETTINGS']
    app.run(
        host=os.getenv('SC_LAB_HOST', '127.0.0.1'),
        port=int(os.getenv('SC_LAB_PORT', 5000)),
        debug=settings.debug,
    )
