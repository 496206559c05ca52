"""
sclab - State Complexity Lab
Application Factory Module

Exact counting of saturated tableaux, Brzozowski witness automata and the
verification harness for catenation combined with boolean operations, served
over a small JSON API. The computational core lives in sclab.services and
does not depend on Flask.
"""

import logging

from flask import Flask, jsonify

from sclab.config import get_config

__version__ = '1.0.0'


def create_app(config_name: str = None) -> Flask:
    """
    Application Factory function that creates and configures the Flask application.

    Args:
        config_name: Configuration environment ('development', 'testing', 'production');
            defaults to SC_LAB_ENV

    Returns:
        Configured Flask application instance
    """
    app = Flask(__name__)

    settings = get_config(config_name)
    app.config.from_mapping(settings.flask_mapping())
    app.config['SETTINGS'] = settings
    app.logger.setLevel(getattr(logging, settings.log_level, logging.INFO))

    # Register blueprints
    from sclab.routes import api_bp
    app.register_blueprint(api_bp, url_prefix='/api/v1')

    environment = 'testing' if settings.testing else ('development' if settings.debug else 'production')

    @app.route('/health')
    def health_check():
        return jsonify({
            'status': 'healthy',
            'service': 'sclab-api',
            'environment': environment,
            'budget': settings.budget,
        }), 200

    @app.route('/')
    def root():
        return jsonify({
            'name': 'sclab API',
            'version': __version__,
            'docs': '/api/v1',
            'health': '/health',
        }), 200

    app.logger.info(f'sclab API ready ({environment}, budget={settings.budget})')
    return app
