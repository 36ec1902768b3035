from rest_framework import serializers

from apps.info_matrix.types import TransitionMatrix


class TransitionMatrixSerializer(serializers.Serializer):
    """JSON form of a transition matrix: {"M": 2, "entries": [[...], [...]]}"""

    M = serializers.IntegerField(min_value=1)
    entries = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(min_value=0.0), allow_empty=False),
        allow_empty=False
    )

    def validate(self, attrs):
        M = attrs['M']
        entries = attrs['entries']
        if len(entries) != M or any(len(row) != M for row in entries):
            raise serializers.ValidationError({'entries': f"Expected {M} rows of {M} entries"})
        return attrs

    def create(self, validated_data):
        return TransitionMatrix(validated_data['entries'])

    def to_representation(self, instance):
        return {'M': instance.M, 'entries': instance.to_list()}
