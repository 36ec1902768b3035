import math

from rest_framework import serializers

from apps.bound_engine.types import METHODS, BoundQuery


class BoundQuerySerializer(serializers.Serializer):
    """Flags of the bound command; exactly one of snr / snr_db"""

    n = serializers.IntegerField(min_value=0)
    N = serializers.IntegerField(min_value=2)
    R = serializers.FloatField()
    snr = serializers.FloatField(required=False, allow_null=True)
    snr_db = serializers.FloatField(required=False, allow_null=True)
    method = serializers.ChoiceField(choices=METHODS, default='quadrature')
    samples = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    seed = serializers.IntegerField(min_value=0, required=False, allow_null=True)

    def validate_R(self, value):
        """Validate rate is positive"""
        if not value > 0:
            raise serializers.ValidationError("Rate must be greater than 0")
        return value

    def validate(self, attrs):
        snr = attrs.get('snr')
        snr_db = attrs.get('snr_db')
        if (snr is None) == (snr_db is None):
            raise serializers.ValidationError({'snr': "Give exactly one of snr and snr_db"})
        if snr_db is not None:
            if not math.isfinite(snr_db):
                raise serializers.ValidationError({'snr_db': "Must be finite"})
            attrs['snr'] = 10.0 ** (snr_db / 10.0)
        elif not snr > 0:
            raise serializers.ValidationError({'snr': "Must be greater than 0"})
        if attrs['method'] == 'monte_carlo' and not attrs.get('samples'):
            raise serializers.ValidationError({'samples': "Required for the monte_carlo method"})
        return attrs

    def create(self, validated_data):
        return BoundQuery(
            n=validated_data['n'],
            N=validated_data['N'],
            R=validated_data['R'],
            snr=validated_data['snr'],
        )


class BoundReportSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    N = serializers.IntegerField()
    R = serializers.FloatField()
    snr = serializers.FloatField()
    snr_db = serializers.FloatField()
    M = serializers.IntegerField()
    method = serializers.CharField()
    per_hop_factor = serializers.FloatField()
    per_hop_stderr = serializers.FloatField(allow_null=True)
    theorem1_bits = serializers.FloatField()
    legacy_bits = serializers.FloatField()
    epsilon = serializers.FloatField()
    e_legacy = serializers.FloatField()
    e_as = serializers.FloatField()
    ratio = serializers.FloatField()
    asymptotic_bits = serializers.FloatField()


class ExponentRowSerializer(serializers.Serializer):
    R = serializers.FloatField()
    S_dB = serializers.FloatField()
    E_as_nats = serializers.FloatField()
    E_nats = serializers.FloatField()
    ratio = serializers.FloatField()


class ConvergenceRowSerializer(serializers.Serializer):
    N = serializers.IntegerField()
    finite_exponent = serializers.FloatField()
    e_as = serializers.FloatField()
    error = serializers.FloatField()
